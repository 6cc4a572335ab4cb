"""
Example Library
Manages the bundled example graphs and endomorphisms under the data directory
"""

import glob
import os
from typing import Dict, List, Optional

from settings import get_settings

EXAMPLE_SUFFIXES = {"graph": ".graph", "endo": ".endo"}


def _data_dir(data_dir: Optional[str]) -> str:
    return data_dir if data_dir is not None else get_settings().data_dir


def get_available_examples(kind: str, data_dir: Optional[str] = None) -> Dict[str, str]:
    """
    Get all bundled examples of one kind

    Args:
        kind: "graph" or "endo"
        data_dir: Directory to scan, defaults to the configured data directory

    Returns:
        Dict mapping display names to file paths, e.g.
        {"Theta": "test_data/theta.graph"}

    Raises:
        ValueError: If kind is unknown
    """
    if kind not in EXAMPLE_SUFFIXES:
        raise ValueError(f"Unknown example kind: {kind}")
    directory = _data_dir(data_dir)
    examples: Dict[str, str] = {}

    if not os.path.exists(directory):
        return examples

    suffix = EXAMPLE_SUFFIXES[kind]
    for path in sorted(glob.glob(os.path.join(directory, f"*{suffix}"))):
        name = os.path.basename(path)[: -len(suffix)]
        display_name = name.replace("_", " ").title()
        examples[display_name] = path

    return examples


def get_example_list(data_dir: Optional[str] = None) -> List[str]:
    """One line per example: `<kind>  <display name>  <path>`."""
    lines = []
    for kind in EXAMPLE_SUFFIXES:
        for display_name, path in get_available_examples(kind, data_dir).items():
            lines.append(f"{kind}  {display_name}  {path}")
    return lines


def get_example_path(kind: str, name: str, data_dir: Optional[str] = None) -> Optional[str]:
    """
    Resolve an example by display name or file stem

    Returns:
        The file path or None if not found
    """
    examples = get_available_examples(kind, data_dir)
    if name in examples:
        return examples[name]
    for path in examples.values():
        if os.path.basename(path)[: -len(EXAMPLE_SUFFIXES[kind])] == name:
            return path
    return None
