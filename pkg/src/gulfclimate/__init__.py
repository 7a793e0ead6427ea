"""Gulf climate agent framework: typed climate tools, an act-observe-reason
agent loop, a tool-use benchmark harness, and textual/visual QA dataset forges."""

__version__ = "0.1.0"
