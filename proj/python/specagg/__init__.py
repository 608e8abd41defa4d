"""Spectrum-aggregating cognitive MAC: analysis, optimizer and simulator."""

try:
    from ._specagg import *  # noqa: F401,F403
    from ._specagg import __doc__  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package, not inside it.
    from _specagg import *  # noqa: F401,F403
