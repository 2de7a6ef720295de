"""Verification sweeps, torsion hunts, the JSONL result log and reports.

A sweep file is JSON::

    {"sweeps": [{"template": "K{n}xK{m}", "ranges": {"n": [2, 5], "m": [2, 5]}}],
     "specs": ["C9xK3"],
     "options": {"reduce": true, "max_dim": null},
     "budget": {"max_faces": 50000000, "timeout_s": 1800},
     "allow_conjecture": false}

Ranges are inclusive. The log is append-only, one record per line; a
record whose ``instance_key`` is already in the log is never recomputed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import logging
import signal
import threading
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .complex import DEFAULT_MAX_FACES
from .errors import ParameterError, RangeError, ResourceError
from .graphs import FamilySpec, build, parse_spec
from .homology import HomologyProfile, run_graph_homology
from .predictions import WedgeProfile, predict, vanishing_window

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT_S = 30 * 60


# -- types ----------------------------------------------------------------------

@dataclass
class SweepSpec:
    specs: list = field(default_factory=list)
    reduce: bool = True
    max_dim: int | None = None
    max_faces: int = DEFAULT_MAX_FACES
    timeout_s: int = DEFAULT_TIMEOUT_S
    allow_conjecture: bool = False
    kind: str = "verify"

    def __post_init__(self):
        if self.max_faces <= 0 or self.timeout_s <= 0:
            raise ParameterError("resource budget must be positive")
        if self.max_dim is not None and self.max_dim < 0:
            raise ParameterError("max_dim must be non-negative")
        self.specs = [str(parse_spec(s)) if isinstance(s, str) else str(s) for s in self.specs]

    @property
    def options(self) -> dict:
        return {"reduce": self.reduce, "max_dim": self.max_dim}

    @classmethod
    def from_json(cls, data: dict) -> "SweepSpec":
        specs = list(data.get("specs", []))
        for block in data.get("sweeps", []):
            specs.extend(expand_template(block["template"], block.get("ranges", {})))
        opts = data.get("options", {})
        budget = data.get("budget", {})
        return cls(specs, opts.get("reduce", True), opts.get("max_dim"),
                   int(budget.get("max_faces", DEFAULT_MAX_FACES)),
                   int(budget.get("timeout_s", DEFAULT_TIMEOUT_S)),
                   bool(data.get("allow_conjecture", False)))

    @classmethod
    def load(cls, path) -> "SweepSpec":
        return cls.from_json(json.loads(Path(path).read_text()))


def expand_template(template: str, ranges: dict) -> list[str]:
    """``"C{k}xK{n}"`` with ``{"k": [3, 4], "n": [2, 3]}`` -> 4 spec strings."""
    names = sorted(ranges)
    spans = []
    for name in names:
        lo, hi = ranges[name]
        if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 1 or hi < lo:
            raise ParameterError(f"range for {name} must be positive integers lo <= hi, got {ranges[name]}")
        spans.append(range(lo, hi + 1))
    return [template.format(**dict(zip(names, vals))) for vals in itertools.product(*spans)]


def parse_range(text: str) -> tuple[int, int]:
    """``"7..10"`` -> (7, 10); a single integer is a one-element range."""
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise ParameterError(f"bad range {text!r}; expected A..B") from None
    if a < 1 or b < a:
        raise ParameterError(f"bad range {text!r}")
    return a, b


@dataclass
class InstanceRecord:
    instance_key: str
    spec: str
    kind: str = "verify"
    status: str = "pending"
    computed: dict | None = None
    predicted: dict | None = None
    match: bool | None = None
    conjecture: bool = False
    torsion_found: bool = False
    reduction_summary: dict = field(default_factory=dict)
    f_vector: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    error: str | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "InstanceRecord":
        return cls(**data)

    @property
    def computed_profile(self) -> HomologyProfile | None:
        return None if self.computed is None else HomologyProfile.from_json(self.computed)

    @property
    def predicted_profile(self) -> WedgeProfile | None:
        return None if self.predicted is None else WedgeProfile.from_json(self.predicted)


def instance_key(spec: FamilySpec | str, options: dict, kind: str = "verify") -> str:
    """sha256 over the canonical edge list, the pipeline options and the spec text."""
    fs = parse_spec(spec) if isinstance(spec, str) else spec
    g = build(fs, allow_unproven=True)
    payload = {"order": g.order, "edges": [list(e) for e in g.edge_list],
               "options": options, "kind": kind, "spec": str(fs)}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# -- one instance ----------------------------------------------------------------------

class _Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise _Timeout()


def _compute(spec_text: str, kind: str, reduce: bool, max_dim, max_faces: int,
             timeout_s: int, allow_conjecture: bool) -> dict:
    """Worker body; returns a record as a dict so it pickles cheaply."""
    fs = parse_spec(spec_text)
    options = {"reduce": reduce, "max_dim": max_dim}
    rec = InstanceRecord(instance_key(fs, options, kind), str(fs), kind)

    pred = None
    if kind == "verify":
        try:
            pred = predict(fs, allow_conjecture=allow_conjecture)
        except RangeError as exc:
            rec.checks["prediction"] = str(exc)
    if pred is not None:
        rec.predicted = pred.to_json()
        rec.conjecture = pred.conjecture

    timed = threading.current_thread() is threading.main_thread()
    if timed:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.alarm(timeout_s)
    try:
        g = build(fs, allow_unproven=True)
        run = run_graph_homology(g, reduce=reduce, max_dim=max_dim, max_faces=max_faces,
                                 check=max_dim is None)
    except ResourceError as exc:
        rec.status, rec.error = "error", f"resource: {exc}"
        return rec.to_json()
    except _Timeout:
        rec.status, rec.error = "error", f"resource: wall clock exceeded {timeout_s} s"
        return rec.to_json()
    except MemoryError:
        rec.status, rec.error = "error", "resource: out of memory"
        return rec.to_json()
    finally:
        if timed:
            signal.alarm(0)
            signal.signal(signal.SIGALRM, old)

    prof = run.profile
    rec.computed = prof.to_json()
    rec.torsion_found = prof.has_torsion
    rec.reduction_summary = run.summary(g)
    rec.f_vector = list(run.f_vector)
    rec.timings = {k: round(v, 3) for k, v in run.timings.items()}

    if pred is not None:
        rec.match = pred.to_homology() == prof
        rec.status = "conjecture" if pred.conjecture else ("match" if rec.match else "mismatch")
        if pred.discrepancy:
            rec.checks["discrepancy"] = _resolve(pred.discrepancy, prof)
    else:
        rec.status = "unpredicted"
    if kind == "hunt":
        _window_check(rec, fs, prof)
    return rec.to_json()


def _resolve(disc: dict, prof: HomologyProfile) -> dict:
    d = disc["dimension"]
    measured = prof.rank(d)
    cands = disc["candidates"]
    return {"dimension": d, "measured": measured, "candidates": cands,
            "matches": sorted(name for name, c in cands.items() if c == measured)}


def _window_check(rec: InstanceRecord, fs: FamilySpec, prof: HomologyProfile):
    by = {f.family: f.params[0] for f in fs.factors}
    k, n = by["cycle"], by["complete"]
    try:
        win = vanishing_window(k, n)
    except RangeError as exc:
        rec.checks["window"] = None
        rec.checks["window_note"] = str(exc)
        rec.status = "torsion" if prof.has_torsion else "no-window"
        return
    dims = sorted(win.allowed_dims)
    outside = sorted(q for q in prof.support if q not in win)
    rec.checks["window"] = dims
    rec.checks["window_betti"] = {str(q): prof.rank(q) for q in dims}
    rec.checks["window_ok"] = not outside
    rec.checks["both_nonzero"] = all(prof.rank(q) for q in dims)
    if outside:
        rec.checks["falsification"] = f"homology outside window in degrees {outside}"
        log.warning("FALSIFICATION %s: homology in degrees %s outside %s", rec.spec, outside, dims)
    if prof.has_torsion:
        rec.checks["torsion"] = {str(q): list(t) for q, t in prof.torsion.items()}
        log.warning("TORSION FOUND in %s: %s", rec.spec, prof)
    rec.status = "falsified" if outside else ("torsion" if prof.has_torsion else "window-ok")


# -- the log ------------------------------------------------------------------------------

def read_log(path) -> list[InstanceRecord]:
    p = Path(path)
    if not p.exists():
        return []
    out = []
    for line in p.read_text().splitlines():
        if line.strip():
            out.append(InstanceRecord.from_json(json.loads(line)))
    return out


class _LogWriter:
    def __init__(self, path):
        self.fh = open(path, "a") if path else None

    def write(self, rec: dict):
        if self.fh:
            self.fh.write(json.dumps(rec, sort_keys=True) + "\n")
            self.fh.flush()

    def close(self):
        if self.fh:
            self.fh.close()


def _run_sweep(spec: SweepSpec, log_path=None, jobs: int = 1) -> list[InstanceRecord]:
    done = {r.instance_key: r for r in read_log(log_path)} if log_path else {}
    results: dict[str, InstanceRecord] = {}
    todo = []
    for text in dict.fromkeys(spec.specs):
        key = instance_key(text, spec.options, spec.kind)
        if key in done:
            results[key] = done[key]
        else:
            todo.append(text)
    args = [(t, spec.kind, spec.reduce, spec.max_dim, spec.max_faces, spec.timeout_s,
             spec.allow_conjecture) for t in todo]
    writer = _LogWriter(log_path)
    try:
        if jobs <= 1 or len(args) <= 1:
            for a in args:
                rec = _compute(*a)
                writer.write(rec)
                results[rec["instance_key"]] = InstanceRecord.from_json(rec)
                log.info("%s: %s", rec["spec"], rec["status"])
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_compute, *a) for a in args]
                for fut in as_completed(futures):
                    rec = fut.result()
                    writer.write(rec)
                    results[rec["instance_key"]] = InstanceRecord.from_json(rec)
                    log.info("%s: %s", rec["spec"], rec["status"])
    finally:
        writer.close()
    return [results[k] for k in sorted(results)]


def verify_sweep(spec: SweepSpec, log_path=None, jobs: int = 1) -> list[InstanceRecord]:
    """Compute every instance, compare with its prediction, append to the log."""
    spec.kind = "verify"
    return _run_sweep(spec, log_path, jobs)


def torsion_hunt_spec(k_range: tuple, n_range: tuple, **kw) -> SweepSpec:
    specs = [f"C{k}xK{n}" for k in range(k_range[0], k_range[1] + 1) if k % 3
             for n in range(n_range[0], n_range[1] + 1)]
    if not specs:
        raise ParameterError("torsion hunt range contains no k with k % 3 != 0")
    return SweepSpec(specs, kind="hunt", **kw)


def hunt_torsion(spec: SweepSpec, log_path=None, jobs: int = 1) -> list[InstanceRecord]:
    """Full profiles of ``C_k x K_n`` (k not a multiple of 3), checked against the window."""
    for text in spec.specs:
        fs = parse_spec(text)
        names = sorted(f.family for f in fs.factors) if fs.family == "tensor" else []
        if names != ["complete", "cycle"]:
            raise ParameterError(f"torsion hunts run over C_k x K_n, got {text}")
        if {f.family: f.params[0] for f in fs.factors}["cycle"] % 3 == 0:
            raise ParameterError(f"{text}: k is a multiple of 3")
    spec.kind = "hunt"
    return _run_sweep(spec, log_path, jobs)


# -- reports ---------------------------------------------------------------------------------

_FORMATS = ("json", "csv", "text")


def summarize(records) -> dict:
    s = {"records": len(records), "match": 0, "mismatch": 0, "error": 0, "conjecture": 0,
         "unpredicted": 0, "window-ok": 0, "no-window": 0, "falsified": 0,
         "with_torsion": 0}
    for r in records:
        if r.status == "torsion":
            s["window-ok" if r.checks.get("window_ok") else "no-window"] += 1
        else:
            s[r.status] = s.get(r.status, 0) + 1
        s["with_torsion"] += bool(r.torsion_found)
    s["verified"] = s["match"] + s["mismatch"] + sum(
        1 for r in records if r.status == "error" and r.predicted and not r.conjecture)
    return s


def _row(r: InstanceRecord) -> dict:
    comp = r.computed_profile
    pred = r.predicted_profile
    return {"instance_key": r.instance_key, "spec": r.spec, "kind": r.kind, "status": r.status,
            "computed": "" if comp is None else str(comp),
            "predicted": "" if pred is None else str(pred),
            "source": "" if pred is None else pred.source,
            "torsion_found": r.torsion_found,
            "vertices": "" if not r.reduction_summary else
            f"{r.reduction_summary['vertices_before']}->{r.reduction_summary['vertices_after']}",
            "notes": _notes(r)}


def _notes(r: InstanceRecord) -> str:
    out = []
    if r.error:
        out.append(r.error)
    d = r.checks.get("discrepancy")
    if d:
        cands = ", ".join(f"{k}={v}" for k, v in sorted(d["candidates"].items()))
        which = ", ".join(d["matches"]) or "neither"
        out.append(f"betti_{d['dimension']}={d['measured']}; candidates {cands}; matches {which}")
    if r.checks.get("window") is not None:
        out.append(f"window {r.checks['window']} ok={r.checks['window_ok']} "
                   f"both_nonzero={r.checks['both_nonzero']}")
    if "falsification" in r.checks:
        out.append("FALSIFICATION: " + r.checks["falsification"])
    if r.torsion_found:
        out.append("TORSION")
    return "; ".join(out)


def report_emit(records, fmt: str = "text") -> str:
    """Deterministic report (sorted by instance_key, timings omitted)."""
    if fmt not in _FORMATS:
        raise ParameterError(f"unknown report format {fmt!r}; choose from {', '.join(_FORMATS)}")
    records = sorted(records, key=lambda r: r.instance_key)
    summary = summarize(records)
    proven = [r for r in records if not r.conjecture]
    conj = [r for r in records if r.conjecture]
    if fmt == "json":
        strip = lambda r: {k: v for k, v in r.to_json().items() if k != "timings"}  # noqa: E731
        doc = {"summary": summary, "records": [strip(r) for r in proven],
               "conjecture": [strip(r) for r in conj]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = [_row(r) for r in proven]
    crows = [_row(r) for r in conj]
    cols = list(_row(InstanceRecord("", "")).keys())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols + ["band"], lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({**row, "band": "proven"})
        for row in crows:
            w.writerow({**row, "band": "conjecture"})
        return buf.getvalue()
    return _text_table(summary, rows, crows)


def _text_table(summary: dict, rows: list, crows: list) -> str:
    cols = ["spec", "status", "computed", "predicted", "vertices", "notes"]
    head = (f"summary: {summary['match']}/{summary['verified']} match, {summary['mismatch']} mismatch, "
            f"{summary['error']} error, {summary['conjecture']} conjecture, "
            f"{summary['unpredicted']} unpredicted, {summary['with_torsion']} with torsion, "
            f"{summary['window-ok']} window-ok, {summary['falsified']} falsified")
    every = rows + crows
    width = {c: max([len(c)] + [len(str(r[c])) for r in every]) for c in cols}
    fmt_row = lambda r: "  ".join(str(r[c]).ljust(width[c]) for c in cols).rstrip()  # noqa: E731
    lines = [head, fmt_row({c: c for c in cols}), fmt_row({c: "-" * width[c] for c in cols})]
    lines += [fmt_row(r) for r in rows]
    if crows:
        lines.append("== CONJECTURE ==")
        lines += [fmt_row(r) for r in crows]
    return "\n".join(lines) + "\n"
