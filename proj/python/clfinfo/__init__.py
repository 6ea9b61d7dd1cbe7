"""Plug-in mutual information between Mandarin classifiers and co-occurring lexical information.

The heavy lifting lives in the compiled ``_core`` module; this package adds
thin conveniences that return parsed JSON.
"""

import json as _json

from ._core import (
    ClfinfoError,
    ConfigError,
    DataError,
    Dictionary,
    FormatError,
    IntervalEstimate,
    Inventory,
    Sentence,
    Token,
    bootstrap_mi,
    condition,
    conditional_entropy,
    entropy,
    extract,
    format_pairs,
    load_dictionary,
    load_inventory,
    map_lemma,
    marginalize_triples,
    mutual_information,
    normalize_gloss,
    read_conllu,
    read_pairs,
    read_triples,
    render_report,
    restricted_mi,
    run_extract,
    summarize,
    synset_mi,
)
from ._core import run_analyze as _run_analyze

__version__ = "0.1.0"


def run_analyze(settings):
    """Run the analyze step and return the report as a dict (also written to settings["output"])."""
    return _json.loads(_run_analyze(settings))


__all__ = [name for name in dir() if not name.startswith("_")]
