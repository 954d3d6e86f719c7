"""Collects one verdict line per acceptance criterion."""

LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    LINES.append(line)
    print(line, flush=True)
