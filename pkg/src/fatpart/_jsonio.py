"""JSON helpers that survive arbitrarily deep nesting.

The stdlib decoder and encoder recurse once per nesting level, so hierarchy
documents deeper than the interpreter's recursion limit fail. Both helpers
try the stdlib first and fall back to an explicit-stack implementation that
reuses the stdlib's scalar scanners.
"""

from __future__ import annotations

import json
import math
from json.decoder import scanstring
from json.scanner import NUMBER_RE

from .exceptions import MalformedDocument

_WS = " \t\n\r"


def loads(text: str):
    try:
        return json.loads(text)
    except RecursionError:
        return _loads_iterative(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None


def dumps(obj, indent: int | None = None) -> str:
    try:
        return json.dumps(obj, indent=indent, allow_nan=False)
    except RecursionError:
        return _dumps_iterative(obj)


def _skip(text: str, i: int) -> int:
    n = len(text)
    while i < n and text[i] in _WS:
        i += 1
    return i


def _scalar(text: str, i: int):
    ch = text[i]
    if ch == '"':
        return scanstring(text, i + 1)
    for lit, val in (("true", True), ("false", False), ("null", None)):
        if text.startswith(lit, i):
            return val, i + len(lit)
    m = NUMBER_RE.match(text, i)
    if m is None:
        raise MalformedDocument(f"invalid JSON near offset {i}")
    integer, frac, exp = m.groups()
    if frac or exp:
        return float(integer + (frac or "") + (exp or "")), m.end()
    return int(integer), m.end()


def _loads_iterative(text: str):
    # stack entries: [container, pending_key]
    stack: list[list] = []
    i = _skip(text, 0)
    result = None
    done = False
    try:
        while not done:
            i = _skip(text, i)
            ch = text[i]
            if stack and isinstance(stack[-1][0], dict) and stack[-1][1] is None:
                if ch == "}":
                    value = stack.pop()[0]
                    i += 1
                else:
                    key, i = scanstring(text, _skip(text, i) + 1)
                    i = _skip(text, i)
                    if text[i] != ":":
                        raise MalformedDocument(f"expected ':' at offset {i}")
                    stack[-1][1] = key
                    continue
            elif ch == "{":
                stack.append([{}, None])
                i += 1
                continue
            elif ch == "[":
                stack.append([[], None])
                i += 1
                if text[_skip(text, i)] == "]":
                    i = _skip(text, i) + 1
                    value = stack.pop()[0]
                else:
                    continue
            elif ch == "]" and stack and isinstance(stack[-1][0], list):
                value = stack.pop()[0]
                i += 1
            elif ch == ":":
                i += 1
                continue
            else:
                value, i = _scalar(text, i)
            # attach value to parent
            while True:
                if not stack:
                    result, done = value, True
                    break
                top = stack[-1]
                if isinstance(top[0], list):
                    top[0].append(value)
                else:
                    top[0][top[1]] = value
                    top[1] = None
                i = _skip(text, i)
                if text[i] == ",":
                    i += 1
                    break
                closer = "]" if isinstance(top[0], list) else "}"
                if text[i] != closer:
                    raise MalformedDocument(f"expected ',' or '{closer}' at offset {i}")
                value = stack.pop()[0]
                i += 1
        if _skip(text, i) != len(text):
            raise MalformedDocument("trailing data after JSON document")
    except IndexError:
        raise MalformedDocument("unexpected end of JSON document") from None
    except ValueError as exc:
        if isinstance(exc, MalformedDocument):
            raise
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    return result


def _dumps_iterative(obj) -> str:
    out: list[str] = []
    # work items are either ("v", value) or ("s", literal string)
    work: list[tuple[str, object]] = [("v", obj)]
    while work:
        kind, item = work.pop()
        if kind == "s":
            out.append(item)  # type: ignore[arg-type]
            continue
        if isinstance(item, dict):
            out.append("{")
            pieces: list[tuple[str, object]] = []
            for j, (k, v) in enumerate(item.items()):
                if j:
                    pieces.append(("s", ", "))
                pieces.append(("s", json.dumps(str(k)) + ": "))
                pieces.append(("v", v))
            pieces.append(("s", "}"))
            work.extend(reversed(pieces))
        elif isinstance(item, (list, tuple)):
            out.append("[")
            pieces = []
            for j, v in enumerate(item):
                if j:
                    pieces.append(("s", ", "))
                pieces.append(("v", v))
            pieces.append(("s", "]"))
            work.extend(reversed(pieces))
        else:
            if isinstance(item, float) and not math.isfinite(item):
                raise ValueError("non-finite float is not JSON serializable")
            out.append(json.dumps(item))
    return "".join(out)
