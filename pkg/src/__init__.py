"""Twisted (Zappa-Szep) products of partial magmas."""
