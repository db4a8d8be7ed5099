#!/usr/bin/env python3
"""
Progress & status output
Status lines and the [####....] progress bar go to stderr so stdout stays
machine-readable.
"""

import sys
import time
from typing import Optional, TextIO


def status(message: str, stream: Optional[TextIO] = None) -> None:
    print(message, file=stream or sys.stderr, flush=True)


class ProgressBar:
    """Single-line progress bar redrawn with a carriage return"""

    def __init__(self, total: int, label: str = "", width: int = 28,
                 stream: Optional[TextIO] = None, enabled: bool = True):
        self.total = max(total, 1)
        self.label = label
        self.width = width
        self.stream = stream or sys.stderr
        self.enabled = enabled
        self.started = time.time()
        self.done = 0

    def update(self, done: int) -> None:
        self.done = done
        if not self.enabled:
            return
        filled = int((done / self.total) * self.width)
        bar = "#" * filled + "." * (self.width - filled)
        elapsed = time.time() - self.started
        print(
            f"\r{self.label}[{bar}] {done}/{self.total}  t={elapsed:0.1f}s",
            end="",
            file=self.stream,
            flush=True,
        )

    def advance(self) -> None:
        self.update(self.done + 1)

    def finish(self) -> None:
        if self.enabled:
            self.update(self.total)
            print(file=self.stream, flush=True)
