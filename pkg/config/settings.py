#!/usr/bin/env python3
"""
Major Index Toolkit Configuration
Centralized configuration management
"""

import os
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables
load_dotenv()

class Config:
    """Application configuration"""

    # Base paths
    BASE_DIR = Path(__file__).parent.parent
    DATA_DIR = BASE_DIR / "data"
    GOLDEN_DIR = DATA_DIR / "golden"
    PUBLISHED_VALUES_PATH = DATA_DIR / "published_values.json"

    # Enumeration ceiling: 12! = 479001600 permutations. Not overridable.
    MAX_DEGREE = 12

    # Enumeration execution controls (never change results, only speed)
    # Largest suffix degree enumerated in one prefix block
    ENUM_BLOCK_DEGREE = int(os.getenv('MAJINDEX_BLOCK_DEGREE', '9'))
    ENUM_THREADS = int(os.getenv('MAJINDEX_THREADS', str(os.cpu_count() or 1)))

    # Progress bars on stderr from this degree upward
    PROGRESS_MIN_DEGREE = int(os.getenv('MAJINDEX_PROGRESS_MIN_DEGREE', '10'))

    # Verification defaults
    VERIFY_DEFAULT_N_MAX = 6
    # Per-suite caps; exhaustive suites over S_n get expensive above these
    VERIFY_LEMMA_MAX_DEGREE = 8
    VERIFY_BIJECTION_MAX_DEGREE = 7
    VERIFY_COUNT_MAX_DEGREE = 9

    @classmethod
    def validate_config(cls):
        """Validate configuration"""
        issues = []

        if not 1 <= cls.ENUM_BLOCK_DEGREE <= cls.MAX_DEGREE:
            issues.append(f"MAJINDEX_BLOCK_DEGREE={cls.ENUM_BLOCK_DEGREE} outside [1, {cls.MAX_DEGREE}]")

        if cls.ENUM_THREADS < 1:
            issues.append(f"MAJINDEX_THREADS={cls.ENUM_THREADS} must be at least 1")

        # Fixtures are checked in; missing files mean a broken checkout
        if not cls.PUBLISHED_VALUES_PATH.exists():
            issues.append(f"Published values fixture missing: {cls.PUBLISHED_VALUES_PATH}")

        for name in ('class_123.txt', 'class_213.txt'):
            if not (cls.GOLDEN_DIR / name).exists():
                issues.append(f"Golden table missing: {cls.GOLDEN_DIR / name}")

        return issues

# Create singleton instance
config = Config()

if __name__ == "__main__":
    # Configuration test
    print("🔧 Major Index Toolkit Configuration")
    print("=" * 40)
    print(f"Data Directory: {config.DATA_DIR}")
    print(f"Golden Directory: {config.GOLDEN_DIR}")
    print(f"Max degree: {config.MAX_DEGREE}")
    print(f"Block degree: {config.ENUM_BLOCK_DEGREE}")
    print(f"Threads: {config.ENUM_THREADS}")

    issues = config.validate_config()
    if issues:
        print(f"\n⚠️  Configuration Issues:")
        for issue in issues:
            print(f"   - {issue}")
    else:
        print(f"\n✅ Configuration is valid")
