"""Command-line front door: every pipeline stage as a subcommand.

Tensors are addressed either as file paths or as "builtin:<name>" URIs
(classical-N, strassen, winograd, laderman, lifted-winograd,
klein-orbit-sum, laderman-variant); groups as "builtin:klein" or a file.
All reports are exact rationals on stdout; diagnostics go to stderr.
Exit codes: 0 success / verified, 1 failed check, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .codegen import emit_code, extract_schedule, op_count, recursive_multiply
from .constructions import (builtin, correction_term, klein_group,
                            merge_shared_factors)
from .isotropy import act, orbit_sum, monomial_stabilizer_search
from .matrix import Matrix, format_fraction
from .tensor import (Tensor, decomposition_length, format_type,
                     is_matmul_tensor, tensor_type)
from .tensorfile import (TensorFileError, read_group_file, read_isotropy_file,
                         read_tensor_file, write_tensor_file)
from .transforms import tensor_lift, tensor_project, tensor_zero
from .trilinear import TrilinearSyntaxError


class CliError(Exception):
    """Usage-level error: reported on stderr, exit code 2."""


def _parse_lambda(text: str) -> Fraction:
    try:
        lam = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"malformed rational for --lambda: {text!r}")
    if lam == 0:
        raise CliError("--lambda must be nonzero")
    return lam


def _load_tensor(spec: str, lam: Fraction) -> Tensor:
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        try:
            return builtin(name, lam)
        except KeyError:
            raise CliError(f"unknown builtin tensor: {name}")
    try:
        with open(spec) as fh:
            return read_tensor_file(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read tensor file {spec}: {exc}")
    except TensorFileError as exc:
        raise CliError(f"bad tensor file {spec}: {exc}")


def _load_group(spec: str):
    if spec == "builtin:klein":
        return klein_group()
    if spec.startswith("builtin:"):
        raise CliError(f"unknown builtin group: {spec[len('builtin:'):]}")
    try:
        with open(spec) as fh:
            return read_group_file(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read group file {spec}: {exc}")
    except (TensorFileError, ValueError) as exc:
        raise CliError(f"bad group file {spec}: {exc}")


def _output_tensor(t: Tensor, out: str | None, lam: Fraction | None = None):
    text = write_tensor_file(t, lam)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_tensor_arg(p):
    p.add_argument("--tensor", required=True,
                   help="tensor file or builtin:<name>")
    p.add_argument("--lambda", dest="lam", default="1",
                   help="rational p/q parameter for builtins")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mmtensor",
                                 description="exact matrix-multiplication "
                                             "tensor workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", help="print a tensor in the file format")
    _add_tensor_arg(p)

    p = sub.add_parser("verify", help="check the multiplication-tensor law")
    _add_tensor_arg(p)

    p = sub.add_parser("type", help="report the type multiset")
    _add_tensor_arg(p)
    p.add_argument("--compare", help="second tensor to compare types with")

    p = sub.add_parser("project", help="project out the (i,j,k) slices")
    _add_tensor_arg(p)
    for f in "ijk":
        p.add_argument(f"--{f}", type=int, required=True)
    p.add_argument("--lift", action="store_true",
                   help="lift the projection back at the same position")
    p.add_argument("--out")

    p = sub.add_parser("zero", help="zero the (i,j,k) slices")
    _add_tensor_arg(p)
    for f in "ijk":
        p.add_argument(f"--{f}", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("act", help="apply a sandwiching isotropy")
    _add_tensor_arg(p)
    p.add_argument("--iso", required=True, help="isotropy file (first element)")
    p.add_argument("--out")

    p = sub.add_parser("orbit", help="sum the orbit under a group")
    _add_tensor_arg(p)
    p.add_argument("--group", required=True, help="builtin:klein or file")
    p.add_argument("--out")

    p = sub.add_parser("merge", help="merge terms sharing two factors")
    _add_tensor_arg(p)
    p.add_argument("--out")

    p = sub.add_parser("construct", help="build a named construction")
    p.add_argument("name", choices=["laderman-variant", "winograd"])
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--out")

    p = sub.add_parser("correction", help="solve the correction term")
    p.add_argument("--group", required=True, help="builtin:klein or file")
    p.add_argument("--out")

    p = sub.add_parser("codegen", help="emit a bilinear schedule as code")
    _add_tensor_arg(p)
    p.add_argument("--style", choices=["flat", "annotated"], default="flat")

    p = sub.add_parser("mul", help="multiply random matrices recursively")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", required=True, help="base tensor spec")
    p.add_argument("--threshold", type=int, default=1)
    p.add_argument("--lambda", dest="lam", default="1")

    p = sub.add_parser("stabilizer-search",
                       help="search for monomial stabilizers")
    _add_tensor_arg(p)
    p.add_argument("--family", choices=["signed-perm"], default="signed-perm")

    p = sub.add_parser("census", help="report all n^3 projections")
    _add_tensor_arg(p)
    return ap


def _cmd_show(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    sys.stdout.write(write_tensor_file(t))
    return 0


def _cmd_verify(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    if is_matmul_tensor(t):
        print(f"VERIFIED n={t.dim} terms={decomposition_length(t)}")
        return 0
    print("NOT A MULTIPLICATION TENSOR")
    return 1


def _cmd_type(args) -> int:
    lam = _parse_lambda(args.lam)
    t = _load_tensor(args.tensor, lam)
    print(format_type(tensor_type(t)))
    if args.compare:
        other = _load_tensor(args.compare, lam)
        if tensor_type(t) == tensor_type(other):
            print("TYPE MATCH")
            return 0
        print("TYPE MISMATCH")
        return 1
    return 0


def _triple(args, dim: int):
    idx = (args.i, args.j, args.k)
    if not all(1 <= x <= dim for x in idx):
        raise CliError(f"indices must lie in 1..{dim}")
    return idx


def _cmd_project(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    idx = _triple(args, t.dim)
    p = tensor_project(t, idx)
    if args.lift:
        p = tensor_lift(p, idx)
    _output_tensor(p, args.out)
    return 0


def _cmd_zero(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    _output_tensor(tensor_zero(t, _triple(args, t.dim)), args.out)
    return 0


def _cmd_act(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    try:
        with open(args.iso) as fh:
            isos = read_isotropy_file(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read isotropy file {args.iso}: {exc}")
    except (TensorFileError, ValueError) as exc:
        raise CliError(f"bad isotropy file {args.iso}: {exc}")
    if not isos:
        raise CliError(f"isotropy file {args.iso} is empty")
    _output_tensor(act(isos[0], t), args.out)
    return 0


def _cmd_orbit(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    group = _load_group(args.group)
    _output_tensor(orbit_sum(group, t), args.out)
    return 0


def _cmd_merge(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    merged = merge_shared_factors(t)
    print(f"merged {decomposition_length(t)} -> "
          f"{decomposition_length(merged)} terms", file=sys.stderr)
    _output_tensor(merged, args.out)
    return 0


def _cmd_construct(args) -> int:
    lam = _parse_lambda(args.lam)
    t = builtin(args.name, lam)
    _output_tensor(t, args.out, lam=lam)
    return 0


def _cmd_correction(args) -> int:
    res = correction_term(_load_group(args.group))
    print(f"corner coefficient {format_fraction(res.corner_coefficient)} "
          f"(total weight {format_fraction(res.corner_total_weight)})",
          file=sys.stderr)
    _output_tensor(res.tensor, args.out)
    return 0


def _cmd_codegen(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    sched = extract_schedule(t)
    sys.stdout.write(emit_code(sched, style=args.style))
    counts = op_count(sched)
    print(f"multiplications {counts.multiplications} "
          f"additions {counts.additions} "
          f"scalar-multiplications {counts.scalar_multiplications}",
          file=sys.stderr)
    return 0


def _cmd_mul(args) -> int:
    if args.size < 1:
        raise CliError("--size must be >= 1")
    base = _load_tensor(args.base, _parse_lambda(args.lam))
    rng = random.Random(args.seed)
    def rnd():
        return Matrix([[Fraction(rng.randint(-99, 99), rng.randint(1, 9))
                        for _ in range(args.size)] for _ in range(args.size)])
    a, b = rnd(), rnd()
    res = recursive_multiply(base, a, b, threshold=args.threshold)
    ok = res.product == a @ b
    print(f"size {args.size} multiplications {res.scalar_multiplications} "
          f"{'OK' if ok else 'MISMATCH'}")
    return 0 if ok else 1


def _cmd_stabilizer_search(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    group = monomial_stabilizer_search(t, family=args.family)
    print(f"stabilizers {len(group)}")
    return 0


def _cmd_census(args) -> int:
    t = _load_tensor(args.tensor, _parse_lambda(args.lam))
    if t.dim < 2:
        raise CliError("census needs dimension >= 2")
    n = t.dim
    all_ok = True
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                p = merge_shared_factors(tensor_project(t, (i, j, k)))
                ok = is_matmul_tensor(p)
                all_ok = all_ok and ok
                print(f"({i},{j},{k}) terms {decomposition_length(p)} "
                      f"{'VERIFIED' if ok else 'FAILED'}")
    return 0 if all_ok else 1


_DISPATCH = {
    "show": _cmd_show,
    "verify": _cmd_verify,
    "type": _cmd_type,
    "project": _cmd_project,
    "zero": _cmd_zero,
    "act": _cmd_act,
    "orbit": _cmd_orbit,
    "merge": _cmd_merge,
    "construct": _cmd_construct,
    "correction": _cmd_correction,
    "codegen": _cmd_codegen,
    "mul": _cmd_mul,
    "stabilizer-search": _cmd_stabilizer_search,
    "census": _cmd_census,
}


def run(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _DISPATCH[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TrilinearSyntaxError, TensorFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
