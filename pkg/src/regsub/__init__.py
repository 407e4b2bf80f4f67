"""Regular submodules of finite p-primary modules over a discrete valuation ring."""

__version__ = "0.1.0"
