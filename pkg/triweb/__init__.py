"""
triweb - triangle presentations, web fiber functors and Yang-Baxter checks

Builds triangle presentations of type Ã_{n-1} (from difference sets, the
built-in exotic example or the degenerate powerset construction), evaluates
web diagrams on them as exact sparse matrices and verifies the web relations
and the Yang-Baxter equation for the resulting R-matrix.
"""

__version__ = "1.0.0"
__author__ = "triweb team"
