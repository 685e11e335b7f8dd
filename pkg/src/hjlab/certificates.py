"""Machine-checkable certificates.

Every search result that claims something positive is written as a
self-contained structured-text document: whatever is needed to re-check the
claim (tables, retraction images, color tables) is embedded, so verification
is a direct evaluation with no search and no external files.  Field order is
fixed and wall-clock time is never written, so identical runs produce
byte-identical certificates.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import CertificateError, HjlabError
from .instances import ApResidueColoring, ModSumColoring, TableColoring
from .semigroups import (
    FiniteSemigroup,
    NiceSubsemigroupView,
    Retraction,
    RetractionFamily,
    is_nice_subsemigroup,
)
from .words import WordSemigroup, contains_variable, format_word, parse_word, substitution_family

HEADER = "hjlab certificate v1"


# -- coloring payloads ---------------------------------------------------


@dataclass
class ColoringFields:
    kind: str  # mod | apres | table
    r: int
    entries: dict = field(default_factory=dict)
    default: int | None = None

    @classmethod
    def from_coloring(cls, coloring):
        if isinstance(coloring, ModSumColoring):
            return cls("mod", coloring.r)
        if isinstance(coloring, ApResidueColoring):
            return cls("apres", coloring.r)
        if isinstance(coloring, TableColoring):
            return cls("table", coloring.r, dict(coloring.entries), coloring.default)
        raise CertificateError(f"coloring kind {coloring.kind!r} cannot be embedded")

    def build(self):
        if self.kind == "mod":
            return ModSumColoring(self.r)
        if self.kind == "apres":
            return ApResidueColoring(self.r)
        return TableColoring(self.entries, r=self.r, default=self.default)

    def render(self):
        if self.kind in ("mod", "apres"):
            return [f"coloring: {self.kind}:{self.r}"]
        lines = ["coloring: table", f"table-colors: {self.r}"]
        lines += [f"table: {k} {v}" for k, v in self.entries.items()]
        if self.default is not None:
            lines.append(f"table-default: {self.default}")
        return lines

    @classmethod
    def parse(cls, fields):
        spec = _one(fields, "coloring")
        if spec in ("table",):
            r = int(_one(fields, "table-colors"))
            entries = {}
            for line in fields.get("table", []):
                parts = line.split()
                if len(parts) != 2:
                    raise CertificateError(f"bad table line: {line!r}")
                entries[parts[0]] = int(parts[1])
            default = fields.get("table-default")
            default = int(default[0]) if default else None
            return cls("table", r, entries, default)
        if ":" not in spec:
            raise CertificateError(f"bad coloring spec: {spec!r}")
        kind, r = spec.split(":", 1)
        if kind not in ("mod", "apres"):
            raise CertificateError(f"unknown embedded coloring kind: {kind!r}")
        return cls(kind, int(r))


# -- certificate kinds ---------------------------------------------------


@dataclass
class WitnessWordsCertificate:
    kind = "witness-words"
    alphabet: int
    variables: int
    reduction: str  # none | vdw
    coloring: ColoringFields
    witness: tuple
    images: list
    color: int
    checked: int


@dataclass
class WitnessFiniteCertificate:
    kind = "witness-finite"
    table: list  # n rows of n ints
    t_members: list
    retractions: list  # one image row per family member
    coloring: ColoringFields
    witness: int
    images: list
    color: int
    checked: int


@dataclass
class HjColoringCertificate:
    kind = "hj-coloring"
    n: int
    N: int
    r: int
    assignment: list
    nodes: int


@dataclass
class VdwColoringCertificate:
    kind = "vdw-coloring"
    k: int
    M: int
    r: int
    assignment: list
    nodes: int


def render_certificate(cert):
    lines = [HEADER, f"kind: {cert.kind}"]
    if isinstance(cert, WitnessWordsCertificate):
        lines.append(f"alphabet: {cert.alphabet}")
        lines.append(f"variables: {cert.variables}")
        lines.append(f"reduction: {cert.reduction}")
        lines += cert.coloring.render()
        lines.append(f"witness: {format_word(cert.witness)}")
        lines.append("images: " + " ".join(format_word(w) for w in cert.images))
        lines.append(f"color: {cert.color}")
        lines.append(f"checked: {cert.checked}")
    elif isinstance(cert, WitnessFiniteCertificate):
        lines.append(f"order: {len(cert.table)}")
        lines += ["row: " + " ".join(str(x) for x in row) for row in cert.table]
        lines.append("subset: " + " ".join(str(x) for x in cert.t_members))
        lines += [
            "retraction: " + " ".join(str(x) for x in row) for row in cert.retractions
        ]
        lines += cert.coloring.render()
        lines.append(f"witness: {cert.witness}")
        lines.append("images: " + " ".join(str(x) for x in cert.images))
        lines.append(f"color: {cert.color}")
        lines.append(f"checked: {cert.checked}")
    elif isinstance(cert, HjColoringCertificate):
        lines.append(f"n: {cert.n}")
        lines.append(f"N: {cert.N}")
        lines.append(f"colors: {cert.r}")
        lines.append("assignment: " + " ".join(str(c) for c in cert.assignment))
        lines.append(f"nodes: {cert.nodes}")
    elif isinstance(cert, VdwColoringCertificate):
        lines.append(f"k: {cert.k}")
        lines.append(f"M: {cert.M}")
        lines.append(f"colors: {cert.r}")
        lines.append("assignment: " + " ".join(str(c) for c in cert.assignment))
        lines.append(f"nodes: {cert.nodes}")
    else:
        raise CertificateError(f"unknown certificate object: {cert!r}")
    lines.append(f"check: {_payload_digest(lines)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def _payload_digest(payload_lines):
    blob = ("\n".join(payload_lines) + "\n").encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def _one(fields, key):
    vals = fields.get(key)
    if not vals:
        raise CertificateError(f"missing field {key!r}")
    if len(vals) > 1:
        raise CertificateError(f"field {key!r} repeated")
    return vals[0]


_KNOWN_KEYS = {
    "kind", "alphabet", "variables", "reduction", "coloring", "table",
    "table-colors", "table-default", "witness", "images", "color", "checked",
    "order", "row", "subset", "retraction", "n", "N", "colors", "assignment",
    "nodes", "k", "M",
}


def parse_certificate(text):
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise CertificateError("missing certificate header")
    if lines[-1] != "end":
        raise CertificateError("certificate truncated (no end marker)")
    if len(lines) < 3 or not lines[-2].startswith("check: "):
        raise CertificateError("missing integrity line")
    if lines[-2][len("check: "):] != _payload_digest(lines[:-2]):
        raise CertificateError("integrity check failed (file was modified)")
    fields = {}
    for ln in lines[1:-2]:
        if ": " not in ln:
            raise CertificateError(f"malformed line: {ln!r}")
        key, value = ln.split(": ", 1)
        if key not in _KNOWN_KEYS:
            raise CertificateError(f"unknown field {key!r}")
        fields.setdefault(key, []).append(value)
    kind = _one(fields, "kind")
    try:
        if kind == "witness-words":
            return WitnessWordsCertificate(
                alphabet=int(_one(fields, "alphabet")),
                variables=int(_one(fields, "variables")),
                reduction=_one(fields, "reduction"),
                coloring=ColoringFields.parse(fields),
                witness=parse_word(_one(fields, "witness")),
                images=[parse_word(t) for t in _one(fields, "images").split()],
                color=int(_one(fields, "color")),
                checked=int(_one(fields, "checked")),
            )
        if kind == "witness-finite":
            order = int(_one(fields, "order"))
            rows = [[int(x) for x in ln.split()] for ln in fields.get("row", [])]
            if len(rows) != order:
                raise CertificateError("row count does not match order")
            return WitnessFiniteCertificate(
                table=rows,
                t_members=[int(x) for x in _one(fields, "subset").split()],
                retractions=[
                    [int(x) for x in ln.split()] for ln in fields.get("retraction", [])
                ],
                coloring=ColoringFields.parse(fields),
                witness=int(_one(fields, "witness")),
                images=[int(x) for x in _one(fields, "images").split()],
                color=int(_one(fields, "color")),
                checked=int(_one(fields, "checked")),
            )
        if kind == "hj-coloring":
            return HjColoringCertificate(
                n=int(_one(fields, "n")),
                N=int(_one(fields, "N")),
                r=int(_one(fields, "colors")),
                assignment=[int(x) for x in _one(fields, "assignment").split()],
                nodes=int(_one(fields, "nodes")),
            )
        if kind == "vdw-coloring":
            return VdwColoringCertificate(
                k=int(_one(fields, "k")),
                M=int(_one(fields, "M")),
                r=int(_one(fields, "colors")),
                assignment=[int(x) for x in _one(fields, "assignment").split()],
                nodes=int(_one(fields, "nodes")),
            )
    except CertificateError:
        raise
    except (ValueError, KeyError) as e:
        raise CertificateError(f"bad field value: {e}") from None
    raise CertificateError(f"unknown certificate kind {kind!r}")


# -- verification --------------------------------------------------------


def _verify_witness_words(cert):
    ws = WordSemigroup(cert.alphabet, cert.variables)
    if not ws.valid_word(cert.witness):
        return False, "witness is not a word over the declared alphabet"
    if not contains_variable(cert.witness):
        return False, "witness is a constant word (not in R)"
    family = substitution_family(ws)
    images = family.images(cert.witness)
    if images != sorted(cert.images):
        return False, "stated images differ from the recomputed substitution images"
    base = cert.coloring.build()
    if cert.reduction == "vdw":
        colors = {base.color_of(sum(w)) for w in images}
    elif cert.reduction == "none":
        colors = {base.color_of(w) for w in images}
    else:
        return False, f"unknown reduction {cert.reduction!r}"
    if colors != {cert.color}:
        return False, f"image colors {sorted(colors)} do not match color {cert.color}"
    return True, "ok"


def _verify_witness_finite(cert):
    S = FiniteSemigroup(cert.table)
    view = NiceSubsemigroupView.from_members(S, cert.t_members)
    nice = is_nice_subsemigroup(S, view)
    if not nice:
        return False, f"declared T is not nice: {nice.describe()}"
    family = RetractionFamily(view, [Retraction(row) for row in cert.retractions])
    if view.contains(cert.witness):
        return False, "witness lies in T (must be in R)"
    images = family.images(cert.witness)
    if images != sorted(cert.images):
        return False, "stated images differ from the recomputed retraction images"
    coloring = cert.coloring.build()
    colors = {coloring.color_of(x) for x in images}
    if colors != {cert.color}:
        return False, f"image colors {sorted(colors)} do not match color {cert.color}"
    return True, "ok"


def _verify_hj_coloring(cert):
    from .search import LineHypergraph, verify_proper_coloring

    if cert.n < 2 or cert.N < 1:
        return False, "bad instance parameters"
    if len(cert.assignment) != cert.n ** cert.N:
        return False, "assignment length does not match n^N"
    if any(c < 0 or c >= cert.r for c in cert.assignment):
        return False, "color out of range"
    hg = LineHypergraph.build(cert.n, cert.N)
    if not verify_proper_coloring(hg.edges, cert.assignment):
        return False, "a combinatorial line is monochromatic"
    return True, "ok"


def _verify_vdw_coloring(cert):
    from .search import ap_edges, verify_proper_coloring

    if cert.k < 2 or cert.M < 1:
        return False, "bad instance parameters"
    if len(cert.assignment) != cert.M:
        return False, "assignment length does not match M"
    if any(c < 0 or c >= cert.r for c in cert.assignment):
        return False, "color out of range"
    if not verify_proper_coloring(ap_edges(cert.k, cert.M), cert.assignment):
        return False, "an arithmetic progression is monochromatic"
    return True, "ok"


def verify_certificate(cert):
    """Re-check a certificate by direct evaluation; returns (ok, message)."""
    try:
        if isinstance(cert, WitnessWordsCertificate):
            return _verify_witness_words(cert)
        if isinstance(cert, WitnessFiniteCertificate):
            return _verify_witness_finite(cert)
        if isinstance(cert, HjColoringCertificate):
            return _verify_hj_coloring(cert)
        if isinstance(cert, VdwColoringCertificate):
            return _verify_vdw_coloring(cert)
    except (HjlabError, ValueError, AssertionError) as e:
        return False, f"verification error: {e}"
    return False, "unknown certificate object"


def verify_certificate_text(text):
    try:
        cert = parse_certificate(text)
    except CertificateError as e:
        return False, str(e)
    return verify_certificate(cert)


def save_certificate(cert, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(render_certificate(cert))


def load_certificate(path):
    with open(path) as fh:
        return parse_certificate(fh.read())


# -- builders used by the CLI and tests ----------------------------------


def words_witness_certificate(ws, coloring, outcome, reduction="none"):
    return WitnessWordsCertificate(
        alphabet=ws.alphabet_size,
        variables=ws.variable_count,
        reduction=reduction,
        coloring=ColoringFields.from_coloring(coloring),
        witness=outcome.witness,
        images=list(outcome.images),
        color=outcome.color,
        checked=outcome.checked,
    )


def finite_witness_certificate(S, family, coloring, outcome):
    return WitnessFiniteCertificate(
        table=[[int(x) for x in row] for row in S.table],
        t_members=family.view.members(),
        retractions=[[int(x) for x in r.mapping] for r in family],
        coloring=ColoringFields.from_coloring(coloring),
        witness=outcome.witness,
        images=list(outcome.images),
        color=outcome.color,
        checked=outcome.checked,
    )


def hj_coloring_certificate(n, N, r, result):
    return HjColoringCertificate(n, N, r, list(result.coloring), result.nodes)


def vdw_coloring_certificate(k, M, r, result):
    return VdwColoringCertificate(k, M, r, list(result.coloring), result.nodes)
