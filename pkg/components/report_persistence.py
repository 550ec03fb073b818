#!/usr/bin/env python3
"""
Report Persistence Component
Renders reports as JSON or CSV and saves/loads the reference-value fixtures.
"""

import io
import json
import os
import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
import sympy as sp

logger = logging.getLogger(__name__)

SAFE_INTEGER = 2**53
DEFAULT_FIXTURES_FILE = os.path.join("saved_data", "reference_values.json")


class ReportWriter:
    """Turns report objects into the JSON and CSV text written to stdout or files."""

    def __init__(self, fmt: str = "json"):
        self.format = fmt

    def _convert_to_serializable(self, obj):
        """Big integers and rationals become strings; containers are walked."""
        if hasattr(obj, 'to_dict'):
            return self._convert_to_serializable(obj.to_dict())
        if isinstance(obj, dict):
            return {str(key): self._convert_to_serializable(value) for key, value in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self._convert_to_serializable(item) for item in obj]
        if isinstance(obj, bool) or obj is None:
            return obj
        if isinstance(obj, int):
            return obj if abs(obj) < SAFE_INTEGER else str(obj)
        if isinstance(obj, (Fraction, sp.Rational)):
            return str(obj)
        if isinstance(obj, Enum):
            return obj.value
        if hasattr(obj, 'item'):
            return obj.item()
        return obj if isinstance(obj, (str, float)) else str(obj)

    def to_json(self, report: Any) -> str:
        return json.dumps(self._convert_to_serializable(report), indent=2, ensure_ascii=False)

    def to_csv(self, rows: Sequence[Sequence], columns: List[str]) -> str:
        """CSV with a header row; every cell is written as text so big integers stay exact."""
        frame = pd.DataFrame([[str(cell) for cell in row] for row in rows], columns=columns)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator='\n')
        return buffer.getvalue()

    def render(self, report: Any, rows: Optional[Sequence[Sequence]] = None,
               columns: Optional[List[str]] = None) -> str:
        if self.format == "csv" and rows is not None and columns is not None:
            return self.to_csv(rows, columns)
        return self.to_json(report) + "\n"


def save_reference_values(values: Dict, path: str = DEFAULT_FIXTURES_FILE) -> bool:
    """Write the fixtures file, creating its directory."""
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(ReportWriter()._convert_to_serializable(values), f, indent=4, ensure_ascii=False)
        logger.info(f"Saved reference values to {path}")
        return True
    except Exception as e:
        logger.error(f"Error saving reference values: {str(e)}")
        return False


def load_reference_values(path: str = DEFAULT_FIXTURES_FILE) -> Dict:
    """Read the fixtures file; a corrupt file is moved aside and treated as empty."""
    try:
        if os.path.exists(path):
            with open(path, 'r', encoding='utf-8') as f:
                content = f.read().strip()
                if not content:
                    return {}
                return json.loads(content)
        return {}
    except json.JSONDecodeError as e:
        logger.error(f"JSON parsing error in reference values file: {str(e)}")
        try:
            backup_file = path + '.backup'
            if os.path.exists(path):
                os.rename(path, backup_file)
            logger.info(f"Backed up corrupted file to {backup_file}")
        except Exception as backup_error:
            logger.error(f"Failed to backup corrupted file: {str(backup_error)}")
        return {}
    except Exception as e:
        logger.error(f"Error loading reference values: {str(e)}")
        return {}
