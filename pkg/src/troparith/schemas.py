"""JSON Schemas for command inputs and outputs."""

RATIONAL = {"anyOf": [{"type": "integer"},
                      {"type": "string", "pattern": r"^\s*[-+]?\d+(\s*/\s*\d+)?\s*$"},
                      {"type": "string", "pattern": r"^\s*[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?\s*$"}]}
INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
INT_MATRIX = {"type": "array", "items": INT_VECTOR}
RAT_VECTOR = {"type": "array", "items": RATIONAL}
COMPLEX = {"anyOf": [{"type": "number"},
                     {"type": "object", "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
                      "additionalProperties": False}]}
COMPLEX_VECTOR = {"anyOf": [COMPLEX, {"type": "array", "items": COMPLEX, "minItems": 1}]}
TAU = {"anyOf": [COMPLEX, {"type": "array", "minItems": 1,
                           "items": {"type": "array", "items": COMPLEX, "minItems": 1}}]}

FORM = {"type": "object", "required": ["gram", "char"],
        "properties": {"rank": {"type": "integer", "minimum": 1},
                       "gram": {"type": "array", "minItems": 1, "items": RAT_VECTOR},
                       "char": INT_VECTOR}}
COVECTOR = {"anyOf": [RAT_VECTOR, {"type": "object", "required": ["coeffs"],
                                   "properties": {"coeffs": RAT_VECTOR}}]}
CELL_IN = {"anyOf": [INT_MATRIX, {"type": "object", "required": ["vertices"],
                                  "properties": {"vertices": INT_MATRIX, "witness": COVECTOR}}]}
CELL_OUT = {"type": "object", "required": ["vertices", "dim"],
            "properties": {"vertices": INT_MATRIX, "dim": {"type": "integer"},
                           "witness": {"type": "object", "required": ["coeffs"],
                                       "properties": {"coeffs": RAT_VECTOR}}}}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props}


FORM_AND_COVECTOR = _obj(["form", "covector"], form=FORM, covector=COVECTOR)
THETA_EVAL_IN = _obj(["z", "tau"], z=COMPLEX_VECTOR, tau=TAU, epsilon={"type": "number", "exclusiveMinimum": 0})

WORKSHEET = _obj(
    ["genus", "degree"],
    genus={"type": "integer", "minimum": 0}, degree={"type": "integer", "minimum": 1},
    faltings={"type": "number"},
    places={"type": "array", "items": _obj(
        ["label", "log_nv"], label={"type": "string"}, log_nv={"type": "number"},
        pairing=INT_MATRIX, val_point={"type": "array", "items": {"anyOf": [RATIONAL, {"type": "number"}]}},
        trop_char=INT_VECTOR, intersection={"type": "integer", "minimum": 0})},
    embeddings={"type": "array", "items": _obj(
        ["label", "tau", "z", "kappa"], label={"type": "string"}, tau=TAU, z=COMPLEX_VECTOR,
        kappa=COMPLEX_VECTOR, epsilon={"type": "number", "exclusiveMinimum": 0})})

INPUTS = {
    "theta-pl": FORM_AND_COVECTOR,
    "theta-eq": FORM_AND_COVECTOR,
    "theta-inv": {"type": "object", "required": ["form"],
                  "properties": {"form": FORM, "covector": COVECTOR}},
    "cocycle-check": _obj(["form", "covector", "vector"], form=FORM, covector=COVECTOR, vector=INT_VECTOR),
    "delaunay-cell": FORM_AND_COVECTOR,
    "delaunay-complex": _obj(["form"], form=FORM, box={"type": "integer", "minimum": 1}),
    "voronoi-cell": _obj(["form", "cell"], form=FORM, cell=CELL_IN, slack=RATIONAL),
    "mdv-member": _obj(["form", "covector", "cell"], form=FORM, covector=COVECTOR, cell=CELL_IN),
    "riemann-theta": THETA_EVAL_IN,
    "norm-theta": THETA_EVAL_IN,
    "nt-height": WORKSHEET,
    "verify": _obj([], trials={"type": "integer", "minimum": 1}, seed={"type": "integer"},
                   gmax={"type": "integer", "minimum": 1, "maximum": 4}),
}

THETA_OUT = _obj(["value", "witnesses", "kind"], value=RATIONAL, witnesses={"type": "array", "items": INT_VECTOR},
                 kind={"enum": ["pl", "eq", "inv", "c"]})
PAIR_OUT = _obj(["lhs", "rhs", "equal"], lhs=RATIONAL, rhs=RATIONAL, equal={"type": "boolean"})
FLOAT_EVAL = {"type": "number"}

OUTPUTS = {
    "theta-pl": THETA_OUT,
    "theta-eq": THETA_OUT,
    "theta-inv": THETA_OUT,
    "cocycle-check": _obj(["pl", "c"], pl=PAIR_OUT, c=PAIR_OUT),
    "delaunay-cell": CELL_OUT,
    "delaunay-complex": _obj(["box", "cells", "classes"], box={"type": "integer"},
                             cells={"type": "array", "items": CELL_OUT},
                             classes={"type": "array", "items": CELL_OUT}),
    "voronoi-cell": _obj(["inequalities"], inequalities={"type": "array", "items": _obj(
        ["vertex", "point", "normal", "offset"], vertex=INT_VECTOR, point=INT_VECTOR,
        normal=RAT_VECTOR, offset=RATIONAL)}),
    "mdv-member": _obj(["member", "by_minimizers", "by_inequalities"], member={"type": "boolean"},
                       by_minimizers={"type": "boolean"}, by_inequalities={"type": "boolean"}),
    "riemann-theta": _obj(["re", "im", "error_bound", "terms_used"], re=FLOAT_EVAL, im=FLOAT_EVAL,
                          error_bound=FLOAT_EVAL, terms_used={"type": "integer"}),
    "norm-theta": _obj(["value", "error_bound", "terms_used"], value=FLOAT_EVAL, error_bound=FLOAT_EVAL,
                       terms_used={"type": "integer"}),
    "nt-height": _obj(["height", "error_bound", "terms"], height=FLOAT_EVAL, error_bound=FLOAT_EVAL,
                      terms={"type": "object"}, metadata={"type": "object"}),
    "verify": _obj(["ok", "trials", "checked", "counterexamples"], ok={"type": "boolean"},
                   trials={"type": "integer"}, checked={"type": "object"}, counterexamples={"type": "object"}),
}

ENVELOPE = _obj(["status", "payload", "diagnostics"], status={"enum": ["ok", "error"]},
                payload={"type": "object"}, diagnostics={"type": "array", "items": {"type": "string"}})
ERROR_PAYLOAD = _obj(["code", "message"], code={"type": "string"}, message={"type": "string"})
