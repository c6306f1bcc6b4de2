"""SimpleLogic: propositional forward-chaining datasets and a fixed-weight
transformer simulator, backed by the C++ core."""

from ._simplelogic import (
    VOCABULARY,
    Example,
    Rule,
    SamplerKind,
    Theory,
    __version__,
    branching_factor,
    brute_force_oracle,
    conditional_histogram,
    fact_count,
    generate_stratified,
    label_and_depth,
    parse_example,
    pred_count,
    render_example,
    render_model_input,
    rule_count,
    sample,
    validate_example,
    verify_constructed_model,
)

__all__ = [
    "VOCABULARY",
    "Example",
    "Rule",
    "SamplerKind",
    "Theory",
    "__version__",
    "branching_factor",
    "brute_force_oracle",
    "conditional_histogram",
    "fact_count",
    "generate_stratified",
    "label_and_depth",
    "parse_example",
    "pred_count",
    "render_example",
    "render_model_input",
    "rule_count",
    "sample",
    "validate_example",
    "verify_constructed_model",
]
