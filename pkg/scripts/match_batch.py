"""Seeded match batteries between the bundled agents.

Pits a first-player agent against a second-player strategy on one of
the bundled lifted pairs for many seeds and tallies outcomes.  With
the tree strategy on the defended side every row should read
"survived"; switching --duplicator to identity shows how quickly the
cycle attack punishes an undefended pairing.

Usage: python3 scripts/match_batch.py --pair fig3 --spoiler random \
           --duplicator tree --k 3 --rounds 20 --seeds 100
"""

from __future__ import annotations

import argparse
import collections
import time

from uggap.game import run_match
from uggap.presets import pair_names, resolve_pair
from uggap.strategy import (
    CycleGreedySpoiler,
    IdentityDuplicator,
    RandomSpoiler,
    TreeDuplicator,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pair", choices=pair_names(), default="fig3")
    parser.add_argument("--spoiler", choices=("random", "cycle"), default="random")
    parser.add_argument("--duplicator", choices=("tree", "identity"), default="tree")
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--rounds", type=int, default=20)
    parser.add_argument("--seeds", type=int, default=100)
    args = parser.parse_args()

    pair = resolve_pair(args.pair)
    a, b = pair.lifted()
    spoiler_for = {
        "random": RandomSpoiler,
        "cycle": CycleGreedySpoiler,
    }[args.spoiler]

    def duplicator():
        if args.duplicator == "tree":
            return TreeDuplicator(pair.context())
        return IdentityDuplicator(a.m)

    tally: collections.Counter = collections.Counter()
    rounds_when_lost = []
    start = time.monotonic()
    for seed in range(args.seeds):
        outcome = run_match(a, b, args.k, spoiler_for(seed), duplicator(), args.rounds)
        tally[outcome.winner] += 1
        if outcome.winner == "spoiler":
            rounds_when_lost.append(outcome.rounds_played)
    elapsed = time.monotonic() - start

    print(
        f"{args.pair} lifted, k={args.k}, {args.spoiler} vs {args.duplicator}, "
        f"{args.rounds} rounds x {args.seeds} seeds ({elapsed:.1f}s)"
    )
    for winner in ("duplicator", "spoiler"):
        print(f"  {winner:>10}: {tally[winner]}")
    if rounds_when_lost:
        avg = sum(rounds_when_lost) / len(rounds_when_lost)
        print(
            f"  losses ended after {min(rounds_when_lost)}-{max(rounds_when_lost)} "
            f"rounds (mean {avg:.1f})"
        )


if __name__ == "__main__":
    main()
