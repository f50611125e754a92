"""superstar: computer-algebra engine for star products on flat superspace."""

__version__ = "0.1.0"
