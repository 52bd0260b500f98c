"""Model-size selection. Import from the submodules directly."""
