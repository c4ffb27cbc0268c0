import random

from reflexa.corpus import random_presentation, ring_spec


def ring(rid):
    return ring_spec(rid).build()


def random_module(A, seed, **kw):
    return random_presentation(A, random.Random(seed), **kw).build(A)


def dense_actions(M):
    return [[[X.cols[j].get(i, 0) for j in range(M.dim)] for i in range(M.dim)] for X in M.actions]
