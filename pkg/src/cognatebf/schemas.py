"""JSON Schemas of the reports printed by the command-line tool."""

MANIFEST = {
    "type": "object",
    "required": ["tool", "version", "subcommand", "config", "seed", "inputs", "timestamp"],
    "properties": {
        "tool": {"const": "cognatebf"},
        "version": {"type": "string"},
        "subcommand": {"type": "string"},
        "config": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "inputs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["path", "sha256"],
                "properties": {"path": {"type": "string"}, "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"}},
            },
        },
        "timestamp": {"type": ["string", "null"]},
    },
}

PROPERTY_REPORT = {
    "type": "object",
    "required": [
        "n", "weight", "balanced", "nonlinearity", "algebraic_degree", "absolute_indicator",
        "sum_of_squares", "ci_order", "resiliency_order", "algebraic_immunity", "is_bent",
        "linear_structures", "algebraically_nondegenerate",
    ],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "weight": {"type": "integer", "minimum": 0},
        "balanced": {"type": "boolean"},
        "nonlinearity": {"type": "integer", "minimum": 0},
        "algebraic_degree": {"type": "integer", "minimum": 0},
        "absolute_indicator": {"type": "integer", "minimum": 0},
        "sum_of_squares": {"type": "integer", "minimum": 0},
        "ci_order": {"type": "integer", "minimum": 0},
        "resiliency_order": {"oneOf": [{"type": "integer", "minimum": 0}, {"const": "not balanced"}]},
        "algebraic_immunity": {"type": ["integer", "null"], "minimum": 0},
        "is_bent": {"type": "boolean"},
        "linear_structures": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "algebraically_nondegenerate": {"type": "boolean"},
    },
}

ANALYZE = {
    "type": "object",
    "required": ["function", "report", "manifest"],
    "properties": {"function": {"type": "string"}, "report": PROPERTY_REPORT, "manifest": MANIFEST},
}

SBOX_REPORT = {
    "type": "object",
    "required": ["n", "m", "min_nonlinearity", "max_absolute_indicator", "bijective",
                 "worst_linear_structure_count", "combinations", "manifest"],
    "properties": {
        "n": {"type": "integer"},
        "m": {"type": "integer"},
        "min_nonlinearity": {"type": "integer"},
        "max_absolute_indicator": {"type": "integer"},
        "bijective": {"type": ["boolean", "null"]},
        "worst_linear_structure_count": {"type": "integer"},
        "combinations": {
            "type": "array",
            "items": {"allOf": [PROPERTY_REPORT, {"required": ["mask"], "properties": {"mask": {"type": "integer"}}}]},
        },
        "manifest": MANIFEST,
    },
}

_CONSISTENCY = {
    "type": "object",
    "required": ["lambda_max", "consistency_index", "consistency_ratio", "consistent"],
    "properties": {
        "lambda_max": {"type": "number"},
        "consistency_index": {"type": "number"},
        "consistency_ratio": {"type": ["number", "null"]},
        "consistent": {"type": ["boolean", "null"]},
    },
}

SELECT = {
    "type": "object",
    "required": ["elected", "ranking", "criteria", "criteria_consistency", "warnings", "manifest"],
    "properties": {
        "elected": {"type": "string"},
        "ranking": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rank", "label", "score"],
                "properties": {"rank": {"type": "integer"}, "label": {"type": "string"}, "score": {"type": "number"}},
            },
        },
        "criteria": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind", "weight", "local_scores"],
                "properties": {
                    "name": {"type": "string"},
                    "kind": {"enum": ["judgment", "measured"]},
                    "weight": {"type": "number"},
                    "local_scores": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
        "criteria_consistency": _CONSISTENCY,
        "warnings": {"type": "array", "items": {"type": "string"}},
        "manifest": MANIFEST,
    },
}
