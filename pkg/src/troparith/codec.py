"""JSON encoding of forms, covectors, cells, complex numbers and worksheets.

Rationals travel as strings ("p/q" or "p"), integers as JSON integers and
complex numbers as {"re": float, "im": float}.
"""
import numpy as np

from . import _exact as ex
from .archtheta import DEFAULT_EPSILON, SiegelPoint
from .delvor import DelaunayCell, affine_dim
from .errors import DimensionMismatch, SchemaViolation
from .heights import ArchPlace, HeightWorksheet, NonArchPlace
from .quadform import Covector, QuadChar


def rational(x):
    return str(ex.to_fraction(x))


def parse_rational(x):
    try:
        return ex.to_fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as err:
        raise SchemaViolation(f"not a rational number: {x!r}") from err


# -- exact objects -----------------------------------------------------------

def dump_quadchar(q):
    return {"rank": q.rank, "gram": [[rational(x) for x in row] for row in q.gram],
            "char": list(q.char)}


def parse_quadchar(obj):
    gram = [[parse_rational(x) for x in row] for row in obj["gram"]]
    char = obj["char"]
    if "rank" in obj and (obj["rank"] != len(char) or obj["rank"] != len(gram)):
        raise DimensionMismatch(f"rank {obj['rank']} does not match gram/char sizes")
    return QuadChar(gram, char)


def dump_covector(l):
    return {"coeffs": [rational(x) for x in l.coeffs]}


def parse_covector(obj):
    coeffs = obj["coeffs"] if isinstance(obj, dict) else obj
    return Covector(tuple(parse_rational(x) for x in coeffs))


def dump_cell(cell):
    out = {"vertices": [list(v) for v in cell.vertices], "dim": cell.dim}
    if cell.witness is not None:
        out["witness"] = dump_covector(cell.witness)
    return out


def parse_cell(obj):
    verts = obj["vertices"] if isinstance(obj, dict) else obj
    verts = tuple(sorted(tuple(int(x) for x in v) for v in verts))
    witness = parse_covector(obj["witness"]) if isinstance(obj, dict) and "witness" in obj else None
    return DelaunayCell(verts, witness, affine_dim(verts))


# -- floating objects ----------------------------------------------------------

def dump_complex(z):
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def parse_complex(obj):
    if isinstance(obj, dict):
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    return complex(float(obj))


def parse_complex_vector(obj):
    if isinstance(obj, (dict, int, float)):
        obj = [obj]
    return np.array([parse_complex(x) for x in obj], dtype=complex)


def parse_tau(obj, epsilon=DEFAULT_EPSILON):
    if isinstance(obj, (dict, int, float)):
        obj = [[obj]]
    tau = np.array([[parse_complex(x) for x in row] for row in obj], dtype=complex)
    return SiegelPoint(tau, epsilon)


def parse_val_point(x):
    # Strings and integers stay exact; floats are rounded downstream.
    if isinstance(x, float):
        return x
    return parse_rational(x)


def parse_worksheet(obj, epsilon=None):
    genus = obj["genus"]
    places = []
    for p in obj.get("places", []):
        r = len(p.get("pairing", []))
        places.append(NonArchPlace(
            label=p["label"], log_nv=float(p["log_nv"]), pairing=tuple(map(tuple, p.get("pairing", []))),
            val_point=tuple(parse_val_point(x) for x in p.get("val_point", [])),
            trop_char=tuple(p.get("trop_char", [0] * r)), intersection=p.get("intersection", 0)))
    embeddings = []
    for e in obj.get("embeddings", []):
        eps = epsilon if epsilon is not None else e.get("epsilon", DEFAULT_EPSILON)
        embeddings.append(ArchPlace(e["label"], parse_tau(e["tau"], eps),
                                    parse_complex_vector(e["z"]), parse_complex_vector(e["kappa"])))
    return HeightWorksheet(genus, obj["degree"], obj.get("faltings"), places, embeddings)


def dump_worksheet(ws):
    places = []
    for p in ws.places:
        places.append({"label": p.label, "log_nv": p.log_nv,
                       "pairing": [list(row) for row in p.pairing],
                       "val_point": [x if isinstance(x, float) else rational(x) for x in p.val_point],
                       "trop_char": list(p.trop_char), "intersection": p.intersection})
    embeddings = []
    for e in ws.embeddings:
        embeddings.append({"label": e.label,
                           "tau": [[dump_complex(x) for x in row] for row in e.tau.tau],
                           "z": [dump_complex(x) for x in e.z],
                           "kappa": [dump_complex(x) for x in e.kappa],
                           "epsilon": e.tau.precision})
    out = {"genus": ws.genus, "degree": ws.degree, "places": places, "embeddings": embeddings}
    if ws.faltings is not None:
        out["faltings"] = ws.faltings
    return out
