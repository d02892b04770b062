"""Python access to the betgames engine. Rationals are returned as "p/q" strings."""

import json
from fractions import Fraction

from . import _core

__all__ = ["play", "replay", "verify_claim", "construct", "lp_solve", "lex_block_roots", "rational"]


def rational(text):
    return Fraction(text)


def play(game, alice, baby="lp", seed=0):
    return json.loads(_core.play(game, alice, baby, seed))


def replay(lines):
    return json.loads(_core.replay(list(lines)))


def verify_claim(which, samples, seed=1):
    return json.loads(_core.verify_claim(which, samples, seed))


def construct(config="", fixture=False):
    return json.loads(_core.construct(config, fixture))


def lp_solve(program):
    return json.loads(_core.lp_solve(json.dumps(program)))


lex_block_roots = _core.lex_block_roots
