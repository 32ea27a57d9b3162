"""Pass/fail lines collected by the acceptance tests, printed in the
terminal summary by ``conftest.py``."""

LINES: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    LINES.append(line)
    print(line)
