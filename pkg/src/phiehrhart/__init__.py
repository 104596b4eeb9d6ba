"""Exact phi-Ehrhart theory over Abelian group rings."""
