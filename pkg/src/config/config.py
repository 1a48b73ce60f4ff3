"""Configuration settings for the knit-products toolkit."""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else default


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw in (None, ""):
        return default
    return raw.strip().lower() in {"1", "true", "yes", "on"}


# Search budgets
DEFAULT_FUEL = _env_int("ZS_FUEL", 100_000)
MAX_WORD_LENGTH = _env_int("ZS_MAX_WORD_LENGTH", 12)
AXIOM_WORD_LENGTH = _env_int("ZS_AXIOM_WORD_LENGTH", 3)
LCLM_SEARCH_LENGTH = _env_int("ZS_LCLM_SEARCH_LENGTH", 4)
ISO_CANDIDATE_CAP = _env_int("ZS_ISO_CANDIDATE_CAP", 1_000_000)

# Logging
LOG_DIR = os.getenv("ZS_LOG_DIR", "logs")
LOG_TO_FILE = _env_bool("ZS_LOG_TO_FILE", False)

# Shipped inputs
DATA_DIR = os.getenv("ZS_DATA_DIR", "data")

# Display name of the empty word when it is used as an element name
EMPTY_WORD_NAME = "1"

# File format schemas: required keys and their JSON types
MAGMA_FILE_SCHEMA = {
    "size": int,
    "names": list,
    "table": list,
}

ACTIONS_FILE_SCHEMA = {
    "A": (dict, str),
    "U": (dict, str),
    "H": (list, str),
    "dot": list,
    "exp": list,
}

PRESENTATION_FILE_SCHEMA = {
    "alphabet": list,
    "kind": str,
    "rules": list,
}

RELATION_FILE_SCHEMA = {
    "size": int,
    "edges": list,
}

CATEGORY_FILE_SCHEMA = {
    "objects": list,
    "morphisms": list,
    "compose": list,
}

BUNDLE_FILE_SCHEMA = {
    **CATEGORY_FILE_SCHEMA,
    "U": (dict, str),
    "phi": dict,
}

GEN_ACTIONS_FILE_SCHEMA = {
    "X": list,
    "Y": list,
    "dot": list,
    "exp": list,
}
