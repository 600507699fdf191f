"""Command-line interface: ``beliefupdate <command> ...``.

Exit codes: 0 success, 1 a coincidence suite failed, 2 usage error,
3 invalid input (parse, validation, kind or frame mismatch),
4 rule undefined on the input, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import compare
from . import evidence as ev
from . import ocf as oc
from . import possibility as po
from .documents import KnowledgeDocument, dumps, load, to_dict
from .errors import (
    FrameMismatch,
    KindMismatch,
    ParseError,
    UnknownRule,
    UpdateError,
    ValidationError,
)
from .frame import enumerate_subsets
from .pipeline import apply_step, load_pipeline, run_pipeline
from .probability import EPS

EXIT_SUITE_FAILED = 1
EXIT_INVALID = 3
EXIT_UNDEFINED = 4
EXIT_IO = 5

COMBINE_RULES = {"dempster": None, "poss-min": "min", "poss-product": "product", "poss-luka": "lukasiewicz"}
UPDATE_RULES = {
    "jeffrey": {"op": "jeffrey_update"},
    "jeffrey-ds": {"op": "jeffrey_ds_update", "rule": "dempster"},
    "jeffrey-geometric": {"op": "jeffrey_ds_update", "rule": "geometric"},
    "poss-jeffrey": {"op": "poss_jeffrey_update"},
    "spohn": {"op": "spohn_partition_update"},
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _events(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


class _Out:
    def __init__(self, args):
        self.args = args
        self.chunks: list[str] = []

    def text(self, line: str = "") -> None:
        self.chunks.append(line + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.args.output:
            Path(self.args.output).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)

    def document(self, doc: KnowledgeDocument, log=None) -> None:
        if self.args.json and log is not None:
            self.text(json.dumps({"document": to_dict(doc), "log": log}, indent=2, sort_keys=True))
        else:
            self.chunks.append(dumps(doc))
        for w in doc.metadata.get("warnings", []):
            print(f"warning: {w}", file=sys.stderr)

    def report(self, payload: dict, lines: list[str]) -> None:
        if self.args.json:
            self.text(json.dumps(payload, indent=2, sort_keys=True, default=str))
        else:
            for line in lines:
                self.text(line)


# --- commands -------------------------------------------------------------------------


def cmd_query(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    ev_set = doc.frame.subset(_events(args.event))
    v = doc.value
    if doc.kind == "mass":
        vals = {"Bel": v.belief(ev_set), "Pl": v.plausibility(ev_set)}
    elif doc.kind == "probability":
        vals = {"P": v.prob(ev_set)}
    elif doc.kind == "possibility":
        vals = {"Pi": v.possibility(ev_set), "N": v.necessity(ev_set)}
    elif doc.kind == "ocf":
        vals = {"kappa": v.rank(ev_set)}
    else:
        raise KindMismatch(f"cannot query a {doc.kind} document")
    out.report({"event": ev_set.names(), "kind": doc.kind, **vals},
               [f"{k}({','.join(ev_set.names())}) = {_fmt(x) if isinstance(x, float) else x}" for k, x in vals.items()])
    return 0


def cmd_condition(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    on = _events(args.on)
    if args.rule in ("upper", "lower"):
        if doc.kind != "mass":
            raise KindMismatch(f"the {args.rule} rule needs a mass document, got {doc.kind}")
        given = doc.frame.subset(on)
        val = ev.condition(doc.value, given, args.rule, args.tolerance)
        bound = val.upper if args.rule == "upper" else val.lower
        table = {}
        for b in enumerate_subsets(doc.frame):
            if not b:
                continue
            try:
                table[",".join(b.names())] = bound(b)
            except UpdateError:
                table[",".join(b.names())] = None
        if all(x is None for x in table.values()):
            raise ev.ConditioningUndefined(f"the {args.rule} conditional is undefined for every event", given)
        lines = [f"{args.rule} P({k} | {','.join(given.names())}) = {'undefined' if x is None else _fmt(x)}"
                 for k, x in table.items()]
        out.report({"rule": args.rule, "given": given.names(), "values": table}, lines)
        return 0
    if args.rule == "ocf" and args.shift is None:
        if doc.kind != "ocf":
            raise KindMismatch(f"the ocf rule needs an ocf document, got {doc.kind}")
        part = oc.ocf_a_part(doc.value, doc.frame.subset(on))
        out.report({"a_part": part}, [f"kappa({k} | A) = {r}" for k, r in part.items()])
        return 0
    step = {"op": "condition", "on": on, "rule": args.rule}
    if args.shift is not None:
        step["shift"] = args.shift
    post, warns = apply_step(doc, step, eps=args.tolerance)
    if warns:
        post.metadata["warnings"] = warns
    out.document(post)
    return 0


def cmd_combine(args, out: _Out) -> int:
    d1, d2 = load(args.doc1, args.tolerance), load(args.doc2, args.tolerance)
    if d1.frame != d2.frame:
        raise FrameMismatch("the two documents use different frames")
    op = COMBINE_RULES[args.rule]
    if op is None:
        masses = []
        for d in (d1, d2):
            if d.kind == "mass":
                masses.append(d.value)
            elif d.kind == "probability":
                masses.append(ev.MassFunction.from_probability(d.value))
            else:
                raise KindMismatch(f"Dempster combination needs mass documents, got {d.kind}")
        result = ev.dempster_combine(*masses, eps=args.tolerance)
    else:
        for d in (d1, d2):
            if d.kind != "possibility":
                raise KindMismatch(f"{args.rule} needs possibility documents, got {d.kind}")
        result = po.poss_combine(d1.value, d2.value, op, args.tolerance)
    out.document(KnowledgeDocument.wrap(result))
    return 0


def cmd_update(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    step = dict(UPDATE_RULES[args.rule], obs_file=str(Path(args.obs).resolve()))
    post, warns = apply_step(doc, step, eps=args.tolerance)
    if warns:
        post.metadata["warnings"] = warns
    out.document(post)
    return 0


def cmd_translate(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    op = "ocf_to_possibility" if args.to == "possibility" else "possibility_to_ocf"
    post, _ = apply_step(doc, {"op": op}, eps=args.tolerance)
    out.document(post)
    return 0


def cmd_compare(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    if doc.kind not in ("ocf", "possibility"):
        raise KindMismatch(f"compare needs an ocf or possibility prior, got {doc.kind}")
    obs = load(args.obs, args.tolerance)
    if obs.frame != doc.frame:
        raise FrameMismatch("observation frame differs from the prior frame")
    if obs.kind == "partition":
        part = obs.value
    elif obs.kind == "possibility":
        part = oc.WeightedPartition.singletons(obs.frame, obs.value.values, "max")
    else:
        raise KindMismatch(f"compare needs a partition or possibility observation, got {obs.kind}")
    rep = oc.compare_rules(doc.value, part, args.tolerance)
    labels = doc.frame.labels
    width = max(len(x) for x in labels + ("state",))
    lines = [f"{'state':<{width}}  {'prior':>10}  {'observed':>10}  {'spohn':>10}  {'possibil.':>10}  {'diff':>10}"]
    for i, lab in enumerate(labels):
        row = (rep.prior.values[i], rep.observation.values[i], rep.spohn.values[i],
               rep.possibilistic.values[i], rep.difference[i])
        lines.append(f"{lab:<{width}}  " + "  ".join(f"{x:>10.6g}" for x in row))
    lines.append(f"divergence: {rep.divergence:.6g}")
    lines += [f"{k}: {v}" for k, v in rep.flags.items()]
    out.report(rep.as_dict(), lines)
    return 0


def cmd_suite(args, out: _Out) -> int:
    names = [args.name] if args.name else None
    reports = compare.run_suite(names, seed=args.seed)
    if args.tolerance != EPS:
        # a global tolerance overrides the per-check defaults
        for r in reports:
            r.tolerance = args.tolerance
            r.passed = r.max_deviation <= args.tolerance
    out.report({"seed": args.seed, "reports": [r.as_dict() for r in reports]}, [r.summary() for r in reports])
    return 0 if all(r.passed for r in reports) else EXIT_SUITE_FAILED


def cmd_run(args, out: _Out) -> int:
    doc = load(args.doc, args.tolerance)
    post, log = run_pipeline(doc, load_pipeline(args.pipeline), args.tolerance)
    out.document(post, log)
    return 0


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, defaults=True):
        # on subcommands the defaults are suppressed so flags given before the command survive
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--tolerance", type=float, default=d(EPS), help="positivity/normalization tolerance")
        parser.add_argument("--output", default=d(None), help="write the result to this path instead of stdout")
        parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable report")

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, defaults=False)

    p = argparse.ArgumentParser(prog="beliefupdate", description=__doc__.splitlines()[0])
    global_flags(p)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", parents=[common], help="evaluate an event")
    q.add_argument("doc")
    q.add_argument("--event", required=True)
    q.set_defaults(func=cmd_query)

    c = sub.add_parser("condition", parents=[common], help="condition on a crisp event")
    c.add_argument("doc")
    c.add_argument("--on", required=True)
    c.add_argument("--rule", required=True,
                   choices=["dempster", "geometric", "upper", "lower", "possibilistic", "ocf", "bayes"])
    c.add_argument("--shift", type=int)
    c.set_defaults(func=cmd_condition)

    m = sub.add_parser("combine", parents=[common], help="symmetric combination of two documents")
    m.add_argument("doc1")
    m.add_argument("doc2")
    m.add_argument("--rule", required=True, choices=list(COMBINE_RULES))
    m.set_defaults(func=cmd_combine)

    u = sub.add_parser("update", parents=[common], help="update by an uncertain observation")
    u.add_argument("doc")
    u.add_argument("--obs", required=True)
    u.add_argument("--rule", required=True, choices=list(UPDATE_RULES))
    u.set_defaults(func=cmd_update)

    t = sub.add_parser("translate", parents=[common], help="OCF <-> possibility translation")
    t.add_argument("doc")
    t.add_argument("--to", required=True, choices=["possibility", "ocf"])
    t.set_defaults(func=cmd_translate)

    k = sub.add_parser("compare", parents=[common], help="Spohn's rule vs the possibilistic rule")
    k.add_argument("doc")
    k.add_argument("--obs", required=True)
    k.set_defaults(func=cmd_compare)

    s = sub.add_parser("suite", parents=[common], help="run built-in coincidence checks")
    s.add_argument("--name", choices=list(compare.BUILTIN_SUITE))
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_suite)

    r = sub.add_parser("run", parents=[common], help="apply a pipeline document")
    r.add_argument("doc")
    r.add_argument("pipeline")
    r.set_defaults(func=cmd_run)
    return p


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (ParseError, ValidationError, KindMismatch, FrameMismatch, UnknownRule)):
        return EXIT_INVALID
    return EXIT_UNDEFINED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args)
    try:
        code = args.func(args, out)
        out.flush()
        return code
    except UpdateError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
