#!/usr/bin/env python3
"""
Fixture Repository
Read access to the checked-in published values and golden class tables
"""

import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from config import config


class FixtureRepository:
    """Repository for published reference data"""

    def __init__(self, published_path: Optional[Path] = None, golden_dir: Optional[Path] = None):
        self.published_path = Path(published_path or config.PUBLISHED_VALUES_PATH)
        self.golden_dir = Path(golden_dir or config.GOLDEN_DIR)
        self._published: Optional[Dict] = None

    def _load(self) -> Dict:
        if self._published is None:
            try:
                with open(self.published_path, encoding="utf-8") as fh:
                    self._published = json.load(fh)
            except (OSError, json.JSONDecodeError) as e:
                print(f"⚠️  Could not load published values {self.published_path}: {e}", file=sys.stderr)
                self._published = {}
        return self._published

    def get_published_tables(self) -> List[Dict]:
        """Class tables as {seed, caption, golden, rows[[word, maj, imaj], ...]}"""
        return self._load().get('class_tables', [])

    def get_published_counts(self) -> List[Dict]:
        return self._load().get('counts', [])

    def get_bijection_examples(self) -> List[Dict]:
        return self._load().get('bijection_examples', [])

    def get_golden_table(self, name: str) -> Optional[str]:
        """Text of data/golden/<name>, or None when missing"""
        path = self.golden_dir / name
        try:
            return path.read_text(encoding="utf-8")
        except OSError as e:
            print(f"⚠️  Golden table unavailable {path}: {e}", file=sys.stderr)
            return None


fixture_repository = FixtureRepository()
