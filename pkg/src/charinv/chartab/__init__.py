from .table import BrauerTable, CharTable, ClassInfo, Verdict, p_regular_classes, verify_table
from .dixon import InternalConsistencyError, dixon_schneider

__all__ = [
    "BrauerTable", "CharTable", "ClassInfo", "Verdict", "InternalConsistencyError",
    "dixon_schneider", "p_regular_classes", "verify_table",
]
