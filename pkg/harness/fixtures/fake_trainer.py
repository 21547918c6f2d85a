"""Deterministic stand-in trainer used by the harness unit tests.

Records its argument vector into the output directory, honours the
FAKE_TRAINER_FAIL environment variable, and prints a trainable-parameter
percentage when adapter flags are present.
"""

import json
import os
import sys
from pathlib import Path


def main() -> None:
    if os.environ.get("FAKE_TRAINER_FAIL"):
        print("fake trainer exploding as requested", file=sys.stderr)
        raise SystemExit(3)
    args = sys.argv[1:]
    flags = dict(zip(args[::2], args[1::2]))
    out_dir = Path(flags["--output_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "captured_args.json").write_text(json.dumps(flags, indent=2))
    (out_dir / "pytorch_model.bin").write_bytes(b"fake-weights")
    if "--lora_r" in flags:
        print("total_params=125000000 trainable_params_pct=1.37")
    else:
        print("total_params=125000000 trainable_params_pct=100.00")
    print("saved checkpoint")


if __name__ == "__main__":
    main()
