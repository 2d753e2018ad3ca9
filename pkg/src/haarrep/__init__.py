"""Haar graphical representations of finite groups."""
