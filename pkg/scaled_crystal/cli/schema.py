RATIONAL = {"type": ["string", "integer"], "pattern": "^-?[0-9]+(/[0-9]+)?$"}

FAMILY = {
    "type": "object",
    "required": ["family"],
    "properties": {
        "family": {"enum": ["free", "abelian", "axb"]},
        "weights": {"type": "array", "items": RATIONAL},
    },
}

TABLE = {
    "type": "object",
    "required": ["elements", "table"],
    "properties": {
        "elements": {"type": "array", "items": {"type": "string"}},
        "zero": {"type": ["string", "null"]},
        "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "scale": {"type": "object", "additionalProperties": RATIONAL},
    },
}

CATALOG = {
    "type": "object",
    "required": ["semigroups"],
    "properties": {"semigroups": {"type": "array", "items": TABLE}},
}

TRACE = {
    "type": "object",
    "required": ["weights", "angles"],
    "properties": {
        "weights": {"type": "array", "items": RATIONAL},
        "angles": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
}

ELEMENT = {
    "type": "object",
    "required": ["s", "t"],
    "properties": {
        "s": {"type": "array", "items": {"type": "integer"}},
        "t": {"type": "array", "items": {"type": "integer"}},
    },
}

KMS_QUERY = {
    "type": "object",
    "required": ["beta", "cutoff", "element"],
    "properties": {
        "family": FAMILY,
        "beta": {"type": "number"},
        "cutoff": RATIONAL,
        "trace": TRACE,
        "element": ELEMENT,
    },
}

MATRIX = {
    "type": "object",
    "required": ["rows"],
    "properties": {
        "rows": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": ["integer", "string"], "pattern": "^poly:\\[.*\\]$"},
            },
        },
        "ncols": {"type": "integer"},
    },
}

GRAPH = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "source", "range"],
                "properties": {
                    "name": {"type": "string"},
                    "source": {"type": "string"},
                    "range": {"type": "string"},
                },
            },
        },
    },
}

SUBSTITUTION = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["vertex", "terms"],
        "properties": {
            "vertex": {"type": "string"},
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["kind", "name"],
                    "properties": {
                        "sign": {"type": "integer"},
                        "kind": {"enum": ["vertex", "edge_range"]},
                        "name": {"type": "string"},
                    },
                },
            },
        },
    },
}

REPORT = {
    "type": "object",
    "required": ["command", "status", "payload", "provenance"],
    "properties": {
        "command": {"type": "string"},
        "status": {"enum": ["ok", "violation", "error"]},
        "payload": {"type": "object"},
        "provenance": {"type": "object", "additionalProperties": {"type": "string"}},
        "witness": {"type": "object"},
    },
}

SCHEMAS = {
    "family": FAMILY,
    "table": TABLE,
    "catalog": CATALOG,
    "trace": TRACE,
    "element": ELEMENT,
    "kms_query": KMS_QUERY,
    "matrix": MATRIX,
    "graph": GRAPH,
    "substitution": SUBSTITUTION,
    "report": REPORT,
}


def emit_schema() -> dict:
    return {name: SCHEMAS[name] for name in sorted(SCHEMAS)}
