"""Rewrite the golden outputs under docs/examples from cases.json."""

import io
import json
import pathlib
import sys

from phiehrhart.cli import run

ROOT = pathlib.Path(__file__).resolve().parent.parent / "docs" / "examples"


def golden_name(case: dict) -> str:
    stem = case["input"].removesuffix(".json")
    flags = "".join(f.lstrip("-") for f in case.get("flags", []))
    return f"{stem}.{case['command']}{'.' + flags if flags else ''}.out"


def render(case: dict) -> tuple[int, str]:
    out = io.StringIO()
    argv = ["--input", str(ROOT / case["input"]), "--command", case["command"], *case.get("flags", [])]
    code = run(argv, stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def main() -> int:
    cases = json.loads((ROOT / "cases.json").read_text())
    for case in cases:
        code, text = render(case)
        if code != 0:
            print(f"{golden_name(case)}: exit {code}", file=sys.stderr)
            return 1
        (ROOT / golden_name(case)).write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
