from django import template

from cli.records import format_number

register = template.Library()


@register.filter
def sig17(value):
    """Format a number with 17 significant digits"""
    return format_number(value)


@register.filter
def cells(row, width=26):
    """Left-justify every cell of a table row to a fixed width"""
    return ''.join(format_number(cell).ljust(int(width)) for cell in row).rstrip()
