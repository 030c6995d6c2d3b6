import numpy as np
import pytest

from teachtrace import synth


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(n): numbered acceptance criterion, reported PASS/FAIL",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    reporter = item.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        verdict = "PASS" if report.passed else "FAIL"
        reporter.write_line(f"ACCEPTANCE {marker.args[0]}: {verdict}")


@pytest.fixture(scope="session")
def lecture_session(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth") / "lecture"
    synth.generate("lecture_audio", out, seed=11)
    return out


@pytest.fixture(scope="session")
def crossing_session(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth") / "crossing"
    synth.generate("crossing", out, seed=11)
    return out


@pytest.fixture(scope="session")
def exit_session(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth") / "exit"
    synth.generate("exit_reentry", out, seed=11)
    return out


@pytest.fixture(scope="session")
def stationary_session(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth") / "stationary"
    synth.generate("stationary", out, seed=11)
    return out


def tone(sr: int, duration: float, f0: float, amp: float = 0.3,
         harmonics: int = 1, phase: float = 0.0) -> np.ndarray:
    """Deterministic test tone, optionally with a 1/k harmonic stack."""
    t = np.arange(int(round(duration * sr))) / sr
    x = np.zeros_like(t)
    for k in range(1, harmonics + 1):
        x += (1.0 / k) * np.sin(2 * np.pi * k * f0 * t + phase)
    peak = np.max(np.abs(x))
    return (amp / peak * x) if peak > 0 else x
