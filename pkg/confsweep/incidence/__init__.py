from .models import Configuration, VerificationReport
from .configuration import (
    canonical,
    collinearity_graph,
    dualize,
    ensure_valid,
    from_line_table,
    from_record,
    incidence_matrix,
    is_identical,
    levi_graph,
    parse_table_text,
    relabel,
    serialize,
    to_record,
    verify,
)

__all__ = [
    "Configuration",
    "VerificationReport",
    "canonical",
    "collinearity_graph",
    "dualize",
    "ensure_valid",
    "from_line_table",
    "from_record",
    "incidence_matrix",
    "is_identical",
    "levi_graph",
    "parse_table_text",
    "relabel",
    "serialize",
    "to_record",
    "verify",
]
