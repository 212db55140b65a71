"""Small input-validation helpers shared by the estimator-style classes."""

from __future__ import annotations

from typing import Iterable


def ensure_text_sequence(X: Iterable[str]) -> list[str]:
    """Validate an iterable of strings (the transformer input contract).

    A bare string is rejected: passing one where a sequence of documents is
    expected is almost always a bug.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError(
            "expected an iterable of strings (one per document); got a single "
            "string -- wrap it in a list"
        )
    docs = list(X)
    for i, doc in enumerate(docs):
        if not isinstance(doc, str):
            raise TypeError(f"document {i} is {type(doc).__name__}, expected str")
    return docs


def ensure_line_iterable(lines: Iterable[str | bytes]) -> Iterable[str | bytes]:
    """Validate a line stream argument without consuming it."""
    if isinstance(lines, (str, bytes)):
        raise TypeError(
            "expected an iterable of lines; got a single string -- use "
            "text.splitlines() or an open file"
        )
    return lines
