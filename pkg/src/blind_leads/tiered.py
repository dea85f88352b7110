"""Hard-coded three-stage baseline.

Stage 1 plans with A* over the maze, stage 2 renders the plan's leading
segment as a short instruction drawn from a finite template table, stage 3
interprets any sentence by word-level Levenshtein distance to the nearest
template instance. Stages 2 and 3 are exact inverses over the template set,
which is what makes the baseline's completion rate 1.0.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import Action, DELTAS, Maze, MAX_ACTIONS_PER_ROUND
from .language import MESSAGE_LEN, Vocabulary

VERBS = ("move", "go", "walk", "head")
DIRECTION_WORDS = {
    Action.NORTH: ("up", "north"),
    Action.SOUTH: ("down", "south"),
    Action.EAST: ("right", "east"),
    Action.WEST: ("left", "west"),
}
COUNT_WORDS = ("one", "two", "three", "four", "five")
UNIT_WORDS = ("block", "blocks", "step", "steps", "square", "squares")

# A* / tie-break order; fixed so planning is deterministic
ACTION_ORDER = (Action.NORTH, Action.SOUTH, Action.EAST, Action.WEST)


@dataclass(frozen=True)
class Template:
    """One concrete instance of the instruction grammar."""

    pattern: tuple[str, ...]
    actions: tuple[Action, ...]


@lru_cache(maxsize=1)
def template_instances() -> tuple[Template, ...]:
    """Every sentence the templated sender can emit, in tie-break order.

    verb x direction synonym x count x (unit word or none); patterns are 3
    or 4 tokens, actions repeat the direction `count` times.
    """
    out = []
    for verb in VERBS:
        for action in ACTION_ORDER:
            for dir_word in DIRECTION_WORDS[action]:
                for count, count_word in enumerate(COUNT_WORDS, start=1):
                    actions = (action,) * count
                    out.append(Template((verb, dir_word, count_word), actions))
                    for unit in UNIT_WORDS:
                        out.append(
                            Template((verb, dir_word, count_word, unit), actions)
                        )
    return tuple(out)


def validate_templates(vocab: Vocabulary) -> None:
    for t in template_instances():
        for word in t.pattern:
            if word not in vocab:
                raise ValueError(f"template word {word!r} not in vocabulary")
        if len(t.pattern) > MESSAGE_LEN:
            raise ValueError(f"template {t.pattern} exceeds {MESSAGE_LEN} tokens")


def _manhattan(a: tuple[int, int], b: tuple[int, int]) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def astar_actions(
    maze: Maze, start: tuple[int, int], goal: tuple[int, int]
) -> list[Action]:
    """Shortest 4-connected path as actions; ties broken by N<S<E<W order."""
    if not maze.is_open(start) or not maze.is_open(goal):
        raise ValueError("start and goal must be open cells")
    if start == goal:
        return []
    # entries: (f, g, insertion counter, cell); counter keeps heap ordering stable
    counter = 0
    open_heap = [(_manhattan(start, goal), 0, counter, start)]
    came_from: dict[tuple[int, int], tuple[tuple[int, int], Action]] = {}
    best_g = {start: 0}
    while open_heap:
        _, g, _, cur = heapq.heappop(open_heap)
        if cur == goal:
            break
        if g > best_g[cur]:
            continue
        for action in ACTION_ORDER:
            dr, dc = DELTAS[action]
            nxt = (cur[0] + dr, cur[1] + dc)
            if not maze.is_open(nxt):
                continue
            ng = g + 1
            if ng < best_g.get(nxt, 1 << 30):
                best_g[nxt] = ng
                came_from[nxt] = (cur, action)
                counter += 1
                heapq.heappush(
                    open_heap, (ng + _manhattan(nxt, goal), ng, counter, nxt)
                )
    if goal not in came_from:
        raise ValueError(f"goal {goal} unreachable from {start}")
    actions = []
    cur = goal
    while cur != start:
        prev, action = came_from[cur]
        actions.append(action)
        cur = prev
    actions.reverse()
    return actions


def plan_to_sentence(plan: list[Action], rng: np.random.Generator) -> str:
    """Describe the plan's longest same-direction prefix (capped at 5 steps).

    Template choices (verb, direction synonym, unit or no unit) are random.
    """
    if not plan:
        raise ValueError("cannot describe an empty plan")
    direction = plan[0]
    count = 1
    while (
        count < len(plan)
        and plan[count] is direction
        and count < MAX_ACTIONS_PER_ROUND
    ):
        count += 1
    verb = VERBS[int(rng.integers(len(VERBS)))]
    dir_word = DIRECTION_WORDS[direction][int(rng.integers(2))]
    count_word = COUNT_WORDS[count - 1]
    words = [verb, dir_word, count_word]
    unit_choice = int(rng.integers(len(UNIT_WORDS) + 1))  # last slot = no unit
    if unit_choice < len(UNIT_WORDS):
        words.append(UNIT_WORDS[unit_choice])
    return " ".join(words)


def levenshtein(a: list[str] | tuple[str, ...], b: list[str] | tuple[str, ...]) -> int:
    """Word-level edit distance (insertions, deletions, substitutions)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, wa in enumerate(a, start=1):
        cur = [i]
        for j, wb in enumerate(b, start=1):
            cost = 0 if wa == wb else 1
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost))
        prev = cur
    return prev[-1]


def sentence_to_actions(text: str) -> list[Action]:
    """Map any sentence to the actions of its nearest template instance.

    Ties are broken by lowest template index, so interpretation is a pure
    function of the text.
    """
    tokens = tuple(text.lower().split())
    best_dist = 1 << 30
    best_actions: tuple[Action, ...] = ()
    for template in template_instances():
        d = levenshtein(tokens, template.pattern)
        if d < best_dist:
            best_dist = d
            best_actions = template.actions
            if d == 0:
                break
    return list(best_actions)
