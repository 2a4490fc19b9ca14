"""Fixed point certification and iteration on ordered partial metric spaces."""

import json as _json

from ._core import (
    DomainError,
    EvalError,
    ExprParseError,
    Instance,
    ValidationError,
    certify,
    eval_expr,
    gallery_instance,
    gallery_names,
    instance_json,
    load_instance,
    parse_instance_text,
    run_gallery,
    solve,
)

__all__ = [
    "DomainError",
    "EvalError",
    "ExprParseError",
    "Instance",
    "ValidationError",
    "certify",
    "certify_report",
    "eval_expr",
    "gallery_instance",
    "gallery_names",
    "instance_json",
    "load_instance",
    "parse_instance_text",
    "run_gallery",
    "solve",
    "solve_report",
]


def certify_report(instance):
    """Certify and return (exit_code, report) with the report as a dict."""
    code, text = certify(instance)
    return code, _json.loads(text)


def solve_report(instance, extra_starts=()):
    """Solve and return (exit_code, report) with the report as a dict."""
    code, text = solve(instance, list(extra_starts))
    return code, _json.loads(text)
