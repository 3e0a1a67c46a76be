"""Isomorphism testing for black-box groups whose orders factor favorably.

The package splits into: order arithmetic (orders), opaque group elements and
the word machinery over them (blackbox, slp), constructive recognition of
abelian and coprime meta-cyclic groups (abelian, metacyclic), a brute-force
oracle for cross-checking on small groups (oracle), ready-made example groups
and a JSON file format for them (constructions, groupfile), and a command
line front end (cli, report).
"""

__version__ = "0.1.0"
