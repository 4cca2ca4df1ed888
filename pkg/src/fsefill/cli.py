"""Command-line front end.

Two ways to mark loss: --mask points at a PGM whose black samples are lost,
--pattern synthesizes a lattice (and, since the input then doubles as
ground truth, lost samples are zeroed before concealment and PSNR is
reported). --bench sweeps block sizes, thread counts and orders and emits
CSV instead of an image.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .conceal import LINESCAN, OPTIMIZED, conceal
from .evalkit import PatternSpec, bench, gen_pattern, psnr, write_csv
from .fse import FseParams
from .grid import build_grid
from .image import LOST, PgmFormatError, load_mask_pgm, load_pgm, save_pgm
from .schedule import render_batch_trace


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"values must be positive: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fsefill",
        description="Conceal lost blocks of a grayscale PGM image by "
        "frequency-selective extrapolation.",
    )
    ap.add_argument("--input", required=True, help="input image (binary PGM)")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--mask", help="loss mask PGM; black samples are lost")
    src.add_argument(
        "--pattern",
        choices=("isolated", "consecutive", "mixed"),
        help="synthesize a loss lattice over the input instead of reading a mask",
    )
    ap.add_argument("--loss-size", type=int, default=16, help="pattern square/stripe size")
    ap.add_argument("--pitch", type=int, default=64, help="pattern repetition pitch")
    ap.add_argument(
        "--order",
        choices=(LINESCAN, OPTIMIZED, "both"),
        default=OPTIMIZED,
        help="block processing order",
    )
    ap.add_argument(
        "--threads",
        type=_int_list,
        default=(1,),
        help="worker threads; comma list allowed with --bench",
    )
    ap.add_argument(
        "--block-size",
        type=_int_list,
        default=(16,),
        help="block side length; comma list allowed with --bench",
    )
    ap.add_argument("--d", type=int, default=16, help="window border width")
    ap.add_argument("--rho", type=float, default=0.8, help="weight decay per unit distance")
    ap.add_argument("--delta", type=float, default=0.2, help="reconstructed-sample weight scale")
    ap.add_argument("--gamma", type=float, default=0.5, help="coefficient step size")
    ap.add_argument("--iterations", type=int, default=200, help="basis selections per window")
    ap.add_argument("--output", help="write concealed image here (binary PGM)")
    ap.add_argument("--csv", help="write benchmark table here (default: stdout)")
    ap.add_argument("--trace-batches", action="store_true", help="print the batch grid")
    ap.add_argument("--bench", action="store_true", help="run the benchmark sweep")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    orders = (LINESCAN, OPTIMIZED) if args.order == "both" else (args.order,)
    if not args.bench:
        if len(args.threads) != 1:
            ap.error("--threads takes a single value unless --bench is given")
        if len(args.block_size) != 1:
            ap.error("--block-size takes a single value unless --bench is given")
        if args.order == "both" and args.output:
            ap.error("--output is ambiguous with --order both")
        # under --bench the sweep itself keeps linescan at one thread
        if LINESCAN in orders and any(t != 1 for t in args.threads):
            ap.error("linescan order is sequential; use --threads 1")

    try:
        with open(args.input, "rb") as f:
            image = load_pgm(f.read())
        if args.mask:
            with open(args.mask, "rb") as f:
                mask = load_mask_pgm(f.read())
            if mask.shape != image.shape:
                raise ValueError(
                    f"mask {mask.shape} does not match image {image.shape}"
                )
        else:
            spec = PatternSpec(args.pattern, args.loss_size, args.pitch)
            mask = gen_pattern(image.shape, spec)
    except (OSError, PgmFormatError, ValueError) as exc:
        print(f"fsefill: {exc}", file=sys.stderr)
        return 1

    def params_for(block_size: int) -> FseParams:
        return FseParams(
            d=args.d,
            rho=args.rho,
            delta=args.delta,
            gamma=args.gamma,
            iterations=args.iterations,
            block_size=block_size,
        )

    try:
        if args.bench:
            rows = bench(
                image,
                mask,
                block_sizes=args.block_size,
                threads=args.threads,
                orders=orders,
                params=params_for(args.block_size[0]),
            )
            if args.csv:
                with open(args.csv, "w", newline="") as f:
                    write_csv(rows, f)
            else:
                write_csv(rows, sys.stdout)
            return 0

        params = params_for(args.block_size[0])
        ground_truth = image if args.pattern else None
        work = np.array(image, copy=True)
        if ground_truth is not None:
            work[mask == LOST] = 0.0

        for order in orders:
            out, _, report = conceal(
                work, mask, params, order=order, threads=args.threads[0]
            )
            line = (
                f"{order}: blocks={report.blocks_processed} "
                f"threads={report.threads} time={report.wall_time:.3f}s"
            )
            if ground_truth is not None:
                line += f" psnr={psnr(ground_truth, out, mask):.4f}dB"
            print(line)
            if report.unconcealed_blocks:
                print(
                    f"fsefill: {len(report.unconcealed_blocks)} block(s) had no "
                    "usable samples and were left untouched",
                    file=sys.stderr,
                )
            if args.trace_batches:
                grid = build_grid(image.shape[1], image.shape[0], params.block_size)
                print(render_batch_trace(grid, report.batches))
            if args.output:
                with open(args.output, "wb") as f:
                    f.write(save_pgm(out))
    except OSError as exc:
        print(f"fsefill: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
