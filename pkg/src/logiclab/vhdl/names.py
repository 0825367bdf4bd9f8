"""Deterministic name mangling between catalog parts and VHDL identifiers."""

from __future__ import annotations

KEYWORD_SUFFIX = "_sig"

from .syntax import KEYWORDS


def sanitize(name: str) -> str:
    """Turn an arbitrary label into a legal VHDL basic identifier."""
    out = []
    for ch in name.lower():
        out.append(ch if ch.isalnum() or ch == "_" else "_")
    cleaned = "".join(out).strip("_") or "n"
    if cleaned[0].isdigit():
        cleaned = "p" + cleaned
    if cleaned in KEYWORDS:
        cleaned += KEYWORD_SUFFIX
    return cleaned


def _part_slug(part: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in part.lower())


def entity_for_part(part: str, delay_ns=None, init=None) -> str:
    """Library entity name for a catalog part (plus baked-in variants)."""
    base = "chip_" + _part_slug(part)
    if delay_ns is not None:
        base += f"_d{delay_ns}"
    if init is not None:
        base += f"_i{init}"
    return base


def part_for_entity(entity: str, parts: list[str]):
    """Reverse lookup: which catalog part an entity name refers to."""
    low = entity.lower()
    for part in parts:
        if low in (sanitize(part), _part_slug(part), "chip_" + _part_slug(part)):
            return part
    return None


def port_for_pin(pin_name: str) -> str:
    return sanitize(pin_name)
