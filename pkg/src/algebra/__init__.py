"""Magmas, actions, products, rewriting and presentations."""
