import sys

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label in (c[0] for c in mod.CHECKS):
        if label in results:
            ok, detail = results[label]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({detail})")
        else:
            terminalreporter.write_line(f"SKIP  {label}  (not run)")
