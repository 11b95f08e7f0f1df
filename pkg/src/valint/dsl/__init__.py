from .parser import Diagnostic, parse
from .render import render
from .runner import Options, RunResult, run_source

__all__ = ["Diagnostic", "Options", "RunResult", "parse", "render", "run_source"]
