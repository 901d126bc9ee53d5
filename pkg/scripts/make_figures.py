#!/usr/bin/env python3
"""Regenerate all five figures (fig2..fig6) via the CLI into out/figures.

Usage: python scripts/make_figures.py [outdir]
"""

import shutil
import sys
import tempfile
from pathlib import Path

from hexlat.cli import main


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        jobs = [
            (["field", "a=1", "lambda_ratio=0.2", "sigma1=2", "sigma2=1"], ["fig2.svg"]),
            (["sweep", "a=1", "lambda_ratio=0.2", "sigma1=2", "sigma2=1"],
             ["fig3.svg", "fig6.svg"]),
            (["moduli", "a=1", "direction=effective_to_bond", "nu_eff=0.3"], ["fig4.svg"]),
            (["moduli", "a=1", "direction=bond_to_effective", "nu=0.2668"], ["fig5.svg"]),
        ]
        for i, (args, figs) in enumerate(jobs):
            job_out = Path(tmp) / str(i)
            code = main([*args, "--out", str(job_out)])
            if code != 0:
                raise SystemExit(f"command {args} failed with exit code {code}")
            for fig in figs:
                shutil.copy(job_out / fig, outdir / fig)
                print(f"wrote {outdir / fig}")


if __name__ == "__main__":
    run(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out/figures"))
