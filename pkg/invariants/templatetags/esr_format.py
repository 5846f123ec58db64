from django import template

register = template.Library()


@register.filter
def compact(value):
    """(1, 0, 0) for lists, k=v pairs for dicts, '-' for None."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "(" + ", ".join(compact(v) for v in value) + ")"
    if isinstance(value, dict):
        return " ".join(f"{k}={compact(v)}" for k, v in value.items())
    return str(value)


@register.filter
def ljust(value, width):
    return str(value).ljust(int(width))
