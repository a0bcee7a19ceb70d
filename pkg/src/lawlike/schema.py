"""JSON Schema (draft 2020-12) for ``equiv --json`` and ``laws --json`` output, version 1."""

_WORLD = {
    "oneOf": [
        {"type": "array", "items": {"type": "string"}},
        {
            "type": "object",
            "required": ["atoms", "predicates"],
            "additionalProperties": False,
            "properties": {
                "atoms": {"type": "array", "items": {"type": "string"}},
                "predicates": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    },
                },
            },
        },
    ]
}

COUNTERMODEL = {
    "type": "object",
    "required": ["kind", "signature", "domain_size", "worlds"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["valuation", "structure", "kripke"]},
        "signature": {
            "type": "object",
            "required": ["atoms", "predicates"],
            "properties": {
                "atoms": {"type": "array", "items": {"type": "string"}},
                "predicates": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
            },
        },
        "domain_size": {"type": "integer", "minimum": 1},
        "worlds": {"type": "array", "minItems": 1, "items": _WORLD},
        "world": {"type": "integer", "minimum": 0},
    },
}

EQUIV = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema_version", "command", "formulas", "semantics", "mode", "verdict",
        "exact", "bounds", "countermodel", "values", "statistics",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": 1},
        "command": {"const": "equiv"},
        "formulas": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        "semantics": {"enum": ["material", "strict"]},
        "mode": {"enum": ["assertional", "pointwise", None]},
        "verdict": {"enum": ["EQUIVALENT", "NOT_EQUIVALENT"]},
        "exact": {"type": "boolean"},
        "bounds": {
            "type": "object",
            "required": ["domain_sizes", "max_domain", "max_worlds"],
            "properties": {
                "domain_sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "max_domain": {"type": "integer", "minimum": 1},
                "max_worlds": {"type": ["integer", "null"], "minimum": 1},
            },
        },
        "countermodel": {"oneOf": [{"type": "null"}, COUNTERMODEL]},
        "values": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["first", "second"],
                    "properties": {"first": {"type": "boolean"}, "second": {"type": "boolean"}},
                },
            ]
        },
        "statistics": {
            "type": "object",
            "required": ["models_examined", "by_domain_size"],
            "properties": {
                "models_examined": {"type": "integer", "minimum": 0},
                "by_domain_size": {"type": "object", "additionalProperties": {"type": "integer"}},
            },
        },
    },
}

LAWS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "laws"],
    "properties": {
        "schema_version": {"const": 1},
        "command": {"const": "laws"},
        "laws": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "formulas", "classical", "strict", "survives"],
                "properties": {
                    "name": {"type": "string"},
                    "formulas": {"type": "array", "items": {"type": "string"}},
                    "classical": EQUIV,
                    "strict": EQUIV,
                    "survives": {"type": "boolean"},
                },
            },
        },
    },
}
