"""Command-line front end: ``discpack {radii,coronas,generate,verify,render,density}``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from pathlib import Path

from . import __version__
from .corona import allowed_coronas, build_corona_set, corona_near_misses
from .errors import DiscpackError, SingleSizeWarning
from .geometry import LARGE, SMALL
from .model import dump_patch, read_patch
from .radii import _large_search_box, enumerate_radius_classes, get_class, large_near_misses, rejected_candidates, residual

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


# --- radii -----------------------------------------------------------------


def _sig(t) -> str:
    return "(" + ",".join(str(v) for v in t) + ")"


def cmd_radii(args) -> int:
    classes = enumerate_radius_classes()
    rejected = rejected_candidates()
    lines = []
    if args.format == "records":
        for rc in classes:
            rec = {
                "id": rc.id,
                "r": rc.value,
                "signature": list(rc.signature),
                "small_corona": rc.small_corona_word,
                "large_signature": list(rc.large_signature),
                "exact_form": rc.closed_form_note,
                "residual": residual(rc),
            }
            lines.append(json.dumps(rec, sort_keys=True))
        for rej in rejected:
            rec = {"signature": list(rej.signature), "r": rej.value, "rejected": rej.reason}
            lines.append(json.dumps(rec, sort_keys=True))
    else:
        lines.append(f"{'id':<4}{'r':<15}{'(i,j,k)':<10}{'small':<8}{'(l,m,n)':<10}{'residual':<12}exact form")
        for rc in classes:
            lines.append(
                f"{rc.id:<4}{rc.value:<15.10f}{_sig(rc.signature):<10}{rc.small_corona_word:<8}"
                f"{_sig(rc.large_signature):<10}{residual(rc):<12.2e}{rc.closed_form_note}"
            )
        for rej in rejected:
            lines.append(f"eliminated {_sig(rej.signature)} r={rej.value:.10f}: {rej.reason}")
    if args.audit:
        lines.append("audit: near misses with tolerance 1e-7 <= |miss| < 1e-4")
        for rc in classes:
            lm = large_near_misses(rc.value)
            cs = corona_near_misses(LARGE, rc) + corona_near_misses(SMALL, rc)
            lines.append(f"  {rc.id}: large-signature near misses {len(lm)}, corona near misses {len(cs)}")
        for rej in rejected:
            sig, miss = min(_large_search_box(rej.value), key=lambda t: abs(t[1]))
            lines.append(
                f"  {_sig(rej.signature)} -> {rej.value:.10f}: {rej.reason} "
                f"(closest large signature {_sig(sig)} misses 2*pi by {abs(miss):.3e})"
            )
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


# --- coronas ---------------------------------------------------------------


def cmd_coronas(args) -> int:
    rc = get_class(args.class_id)
    raw = build_corona_set(rc)
    kept = allowed_coronas(rc)
    lines = []
    if args.count_only:
        lines.append(f"small {len(raw.small)}")
        lines.append(f"large {len(raw.large)}")
        lines.append(f"excluded {len(kept.excluded)}")
    else:
        lines.append(f"class {rc}")
        for label, seq in (("small", raw.small), ("large", raw.large)):
            lines.append(f"{label} coronas before filtering: {len(seq)}")
            lines.extend(f"  {c}" for c in seq)
        lines.append(f"excluded: {len(kept.excluded)}")
        lines.extend(f"  {c}  ({reason})" for c, reason in kept.excluded)
        lines.append(f"allowed: small {len(kept.small)}, large {len(kept.large)}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


# --- generate --------------------------------------------------------------


def _read_int_rows(path: str, width: int) -> list[tuple[int, ...]]:
    out = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != width:
            raise UsageError(f"{path}:{lineno}: expected {width} integers, got {line!r}")
        try:
            out.append(tuple(int(v) for v in parts))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: expected integers, got {line!r}") from None
    return out


def _extent(text: str | None, default):
    if text is None:
        return default
    parts = [int(v) for v in text.replace("x", ",").split(",")]
    if len(parts) == 1:
        return (parts[0], parts[0]) if isinstance(default, tuple) else parts[0]
    return tuple(parts)


def _bits(text: str) -> tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"bits must be a string of 0 and 1, got {text!r}")
    return tuple(int(c) for c in text)


def descriptor_from_args(args):
    from . import generate as gen
    from .generate.tiling import load_tiling

    cid = args.class_id
    periodic = not args.finite
    chosen = [
        name
        for name in ("preset", "descriptor", "substitute", "holes", "all_holes", "layers", "bits", "rows", "tiling", "random")
        if getattr(args, name) not in (None, False)
    ]
    if len(chosen) > 1:
        raise UsageError(f"choose one construction source, got {', '.join('--' + c.replace('_', '-') for c in chosen)}")
    source = chosen[0] if chosen else "preset"
    if source == "preset":
        _, d = gen.resolve_preset(args.preset or "figure", cid)
        return d
    if source == "descriptor":
        return descriptor_from_dict(cid, json.loads(Path(args.descriptor).read_text(encoding="utf-8")), Path(args.descriptor).parent)
    if source == "substitute":
        if cid != "c5":
            raise UsageError("--substitute applies to c5")
        pts = _read_int_rows(args.substitute, 2)
        return gen.C5Substitute(points=frozenset(pts), extent=_extent(args.extent, (3, 3)), periodic=periodic)
    if source in ("holes", "all_holes"):
        cls = {"c8": gen.C8Fill, "c9": gen.C9Fill}.get(cid)
        if cls is None:
            raise UsageError("--holes/--all-holes apply to c8 and c9")
        holes = None if source == "all_holes" else frozenset(_read_int_rows(args.holes, 3))
        return cls(holes=holes, extent=_extent(args.extent, (4, 4) if cid == "c8" else (3, 3)), periodic=periodic)
    if source == "layers":
        if cid != "c3":
            raise UsageError("--layers applies to c3")
        return gen.C3LayersA(word=args.layers, extent=_extent(args.extent, 3))
    if source == "bits":
        if cid == "c1":
            return gen.C1Layers(bits=_bits(args.bits), extent=_extent(args.extent, 3))
        if cid == "c3":
            return gen.C3LayersB(bits=_bits(args.bits), extent=_extent(args.extent, 3))
        raise UsageError("--bits applies to c1 and c3")
    wrap = {"c4": gen.C4FromTiling, "c7": gen.C7FromTiling, "c2": gen.C2FromTiling}.get(cid)
    if wrap is None:
        raise UsageError(f"--{source} applies to c2, c4 and c7")
    if source == "rows":
        if cid == "c2":
            raise UsageError("--rows applies to c4 and c7")
        return wrap(gen.row_tiling(gen.parse_rows(args.rows), args.width, periodic=periodic))
    if source == "tiling":
        return wrap(load_tiling(Path(args.tiling).read_text(encoding="utf-8")))
    rng = random.Random(args.random)
    if cid == "c2":
        return wrap(gen.random_c2_tiling(rng))
    kind = gen.FaceKind.SQUARE if cid == "c4" else gen.FaceKind.RHOMBUS
    return wrap(gen.random_row_tiling(kind, rng))


def descriptor_from_dict(cid: str, doc: dict, base: Path = Path(".")):
    """Descriptor document: ``{"type": <descriptor name>, ...fields}``."""
    from . import generate as gen
    from .generate.tiling import load_tiling

    if not isinstance(doc, dict) or "type" not in doc:
        raise UsageError("descriptor document needs a 'type' field")
    kind = doc["type"]
    fields = {k: v for k, v in doc.items() if k != "type"}
    simple = {
        "C6Unique": gen.C6Unique,
        "C5Substitute": gen.C5Substitute,
        "C8Fill": gen.C8Fill,
        "C9Fill": gen.C9Fill,
        "C1Layers": gen.C1Layers,
        "C3LayersA": gen.C3LayersA,
        "C3LayersB": gen.C3LayersB,
    }
    tiled = {"C4FromTiling": gen.C4FromTiling, "C7FromTiling": gen.C7FromTiling, "C2FromTiling": gen.C2FromTiling}
    if kind in simple:
        if "points" in fields:
            fields["points"] = frozenset(tuple(p) for p in fields["points"])
        if fields.get("holes") is not None:
            fields["holes"] = frozenset(tuple(h) for h in fields["holes"])
        if "bits" in fields and isinstance(fields["bits"], str):
            fields["bits"] = _bits(fields["bits"])
        if isinstance(fields.get("extent"), list):
            fields["extent"] = tuple(fields["extent"])
        try:
            return simple[kind](**fields)
        except TypeError as exc:
            raise UsageError(f"descriptor {kind}: {exc}") from None
    if kind in tiled:
        if "rows" in fields:
            t = gen.row_tiling(gen.parse_rows(fields["rows"]), int(fields.get("width", 3)), bool(fields.get("periodic", True)))
        elif "tiling" in fields:
            src = fields["tiling"]
            t = load_tiling(json.dumps(src) if isinstance(src, dict) else (base / src).read_text(encoding="utf-8"))
        else:
            raise UsageError(f"descriptor {kind} needs 'rows' or 'tiling'")
        return tiled[kind](t)
    raise UsageError(f"unknown descriptor type {kind!r}")


def cmd_generate(args) -> int:
    from .generate import generate

    d = descriptor_from_args(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SingleSizeWarning)
        patch = generate(get_class(args.class_id), d)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(dump_patch(patch), args.output)
    return EXIT_OK


# --- verify / render / density ---------------------------------------------


def cmd_verify(args) -> int:
    from .verify import verify_patch

    rep = verify_patch(read_patch(args.patch))
    _emit(rep.format(), None)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_render(args) -> int:
    from .render import Style, render_svg

    patch = read_patch(args.patch)
    svg = render_svg(patch, edges=args.edges, repeat=args.repeat, style=Style(scale=args.scale))
    _emit(svg, args.output)
    return EXIT_OK


def cmd_density(args) -> int:
    from .verify import density

    patch = read_patch(args.patch)
    _emit(f"{density(patch):.15f}\n", None)
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discpack", description="Compact packings of discs with two radii.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radii", help="derive the nine radius classes")
    p.add_argument("--audit", action="store_true", help="add the near-miss scan")
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("coronas", help="list coronas of a class")
    p.add_argument("class_id", metavar="CLASS")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_coronas)

    p = sub.add_parser("generate", help="write a patch file for a construction")
    p.add_argument("class_id", metavar="CLASS")
    p.add_argument("--preset", help="fig1..fig15 or 'figure' for the class's main figure")
    p.add_argument("--descriptor", metavar="FILE", help="JSON descriptor document")
    p.add_argument("--substitute", metavar="FILE", help="c5: lattice points 'i j' per line")
    p.add_argument("--holes", metavar="FILE", help="c8/c9: holes 'i j k' per line (k=0 up, 1 down)")
    p.add_argument("--all-holes", action="store_true", help="c8/c9: fill every hole")
    p.add_argument("--layers", metavar="WORD", help="c3 row family: cyclic word over L and S")
    p.add_argument("--bits", metavar="BITS", help="c1 layer orientations or c3 pair-layer offsets")
    p.add_argument("--rows", metavar="SPEC", help="c4/c7 row stack, e.g. 'S,T+,S,T-'")
    p.add_argument("--tiling", metavar="FILE", help="c2/c4/c7 tiling document")
    p.add_argument("--random", type=int, metavar="SEED", help="c2/c4/c7 random finite tiling")
    p.add_argument("--extent", help="cells, 'n' or 'nx,ny'")
    p.add_argument("--width", type=int, default=3, help="cells per row for --rows")
    p.add_argument("--finite", action="store_true", help="no periods (lattice families and --rows)")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check overlaps, compactness and coronas")
    p.add_argument("patch", metavar="PATCH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a patch as SVG")
    p.add_argument("patch", metavar="PATCH")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--edges", action="store_true", help="draw large-large contacts")
    p.add_argument("--repeat", type=int, default=1, help="periodic copies per direction")
    p.add_argument("--scale", type=float, default=40.0, help="pixels per unit length")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("density", help="packing density of a periodic patch")
    p.add_argument("patch", metavar="PATCH")
    p.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DiscpackError, KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
