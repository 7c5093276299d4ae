#!/usr/bin/env python3
"""
Command-line front end for the tree spectra toolkit.
"""

import argparse
import os
import sys

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), "src"))

from commands.runner import Invocation, run
from utils.config import Config, setup_logging


def parse_arguments(argv=None):
    parser = argparse.ArgumentParser(description="Secular polynomials, strata and spectra of metric trees")
    parser.add_argument("command", choices=["secular", "strata", "obstruction", "spectrum", "mingap", "verify", "genericity"])
    parser.add_argument("graph", help="Graph file, or one of path:N, star:N, caterpillar")
    parser.add_argument("--lengths", help="Edge lengths l1,l2,...")
    parser.add_argument("--kmax", type=float, help="Upper end of the spectral window")
    parser.add_argument("--window", help="Mingap window K0,K1")
    parser.add_argument("--m", type=int, help="Subgraph type for the strata report")
    parser.add_argument("--relations", help="Relation file, one row of integers per line")
    parser.add_argument("--symbolic", type=int, help="Symbolic obstruction with this many relation rows")
    parser.add_argument("--seed", type=int, help="Random seed, required by randomized commands")
    parser.add_argument("--samples", type=int, help="Number of random samples")
    parser.add_argument("--tol-rank", type=float, default=Config.TOL_RANK, help="Relative rank tolerance")
    parser.add_argument("--tol-root", type=float, default=Config.TOL_ROOT, help="Root accuracy in k")
    parser.add_argument("--format", choices=["human", "machine"], default="human", help="Output format")
    parser.add_argument("--log-level", default="WARNING", help="Console log level")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_arguments(argv)
    setup_logging(args.log_level)

    options = {
        "lengths": args.lengths,
        "kmax": args.kmax,
        "window": args.window,
        "m": args.m,
        "relations": args.relations,
        "symbolic": args.symbolic,
        "seed": args.seed,
        "samples": args.samples,
        "tol_rank": args.tol_rank,
        "tol_root": args.tol_root,
        "output_format": args.format,
    }
    code, output = run(Invocation(args.command, args.graph, options))
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
