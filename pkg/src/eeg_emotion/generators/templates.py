"""Template rendering system using Jinja2.

Text reports are laid out by templates in the package ``resources`` directory;
numbers are formatted in Python and passed in as context or filters.
"""

from collections.abc import Callable
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined


def get_template_dir() -> Path:
    """Get the path to the templates directory."""
    return Path(__file__).parent.parent / "resources"


def create_jinja_env(filters: dict[str, Callable] | None = None) -> Environment:
    """Create and configure a Jinja2 environment.

    Args:
        filters: Extra filters to register (e.g. ``{"percent": format_percent}``)

    Returns:
        Configured Jinja2 Environment with the templates directory as loader.
    """
    env = Environment(
        loader=FileSystemLoader(get_template_dir()),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        undefined=StrictUndefined,
    )
    env.filters.update(filters or {})
    return env


def render_template(
    template_name: str, context: dict, filters: dict[str, Callable] | None = None
) -> str:
    """Render a template with the given context.

    Args:
        template_name: Name of the template file (e.g., "report.txt.j2")
        context: Dictionary of variables to pass to the template
        filters: Extra filters for this rendering

    Returns:
        Rendered template as a string
    """
    env = create_jinja_env(filters)
    template = env.get_template(template_name)
    return template.render(**context)
