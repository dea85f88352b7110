"""8x8 maze environment: state, action execution, rewards, episode bookkeeping.

Rewards per step are exactly one of +1.00 (goal), -0.04 (step / NONE),
-0.29 (step onto an already-visited cell), -0.75 (move into a wall or off
the grid). Episodes end at the goal or after MAX_STEPS steps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

import numpy as np

GRID_SIZE = 8
MAX_STEPS = 100
MAX_ACTIONS_PER_ROUND = 5
TRAIN_GOAL = (4, 4)

REWARD_GOAL = 1.00
REWARD_STEP = -0.04
REWARD_REVISIT = -0.29  # step cost -0.04 plus revisit penalty -0.25
REWARD_INVALID = -0.75


class Action(Enum):
    NORTH = 0
    SOUTH = 1
    EAST = 2
    WEST = 3
    NONE = 4


# row 0 is the top of the grid, so NORTH decreases the row index
DELTAS = {
    Action.NORTH: (-1, 0),
    Action.SOUTH: (1, 0),
    Action.EAST: (0, 1),
    Action.WEST: (0, -1),
}


class MazeFormatError(ValueError):
    """Raised for malformed maze text or violated maze invariants."""


@dataclass(frozen=True)
class Maze:
    id: int
    walls: tuple[tuple[bool, ...], ...]  # GRID_SIZE x GRID_SIZE, True = wall

    def is_open(self, pos: tuple[int, int]) -> bool:
        r, c = pos
        return 0 <= r < GRID_SIZE and 0 <= c < GRID_SIZE and not self.walls[r][c]

    def open_cells(self) -> list[tuple[int, int]]:
        return [
            (r, c)
            for r in range(GRID_SIZE)
            for c in range(GRID_SIZE)
            if not self.walls[r][c]
        ]


@dataclass
class EnvState:
    maze: Maze
    agent_pos: tuple[int, int]
    goal_pos: tuple[int, int]
    visited: set[tuple[int, int]] = field(default_factory=set)
    steps_taken: int = 0
    terminal: bool = False

    @property
    def won(self) -> bool:
        return self.agent_pos == self.goal_pos


@dataclass(frozen=True)
class StepOutcome:
    reward: float
    moved: bool
    terminal: bool


@dataclass(frozen=True)
class RoundResult:
    executed: tuple[tuple[Action, StepOutcome], ...]
    total_reward: float
    next_state: EnvState


def load_maze(text: str, maze_id: int = 0) -> Maze:
    """Parse maze text: 8 lines of 8 chars, '#' wall / '.' open.

    Validates single-connectivity of the open region and that the training
    goal cell (4,4) is open.
    """
    lines = [line for line in text.splitlines() if line.strip() != ""]
    if len(lines) != GRID_SIZE:
        raise MazeFormatError(f"expected {GRID_SIZE} lines, got {len(lines)}")
    walls = []
    for r, line in enumerate(lines):
        if len(line) != GRID_SIZE:
            raise MazeFormatError(
                f"line {r + 1} has {len(line)} characters, expected {GRID_SIZE}"
            )
        row = []
        for c, ch in enumerate(line):
            if ch == "#":
                row.append(True)
            elif ch == ".":
                row.append(False)
            else:
                raise MazeFormatError(f"illegal character {ch!r} at line {r + 1}")
        walls.append(tuple(row))
    maze = Maze(id=maze_id, walls=tuple(walls))

    if not maze.is_open(TRAIN_GOAL):
        raise MazeFormatError(f"training goal cell {TRAIN_GOAL} must be open")
    open_cells = maze.open_cells()
    reachable = _flood_fill(maze, open_cells[0])
    if len(reachable) != len(open_cells):
        raise MazeFormatError("open cells are not a single connected region")
    return maze


def _flood_fill(maze: Maze, start: tuple[int, int]) -> set[tuple[int, int]]:
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for dr, dc in DELTAS.values():
            nxt = (r + dr, c + dc)
            if maze.is_open(nxt) and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def builtin_maze_ids() -> list[str]:
    return [f"maze{i}" for i in range(1, 7)]


def load_builtin_maze(maze_id: str) -> Maze:
    """Load one of the six shipped mazes by name, e.g. 'maze3'."""
    if maze_id not in builtin_maze_ids():
        raise MazeFormatError(f"unknown maze {maze_id!r}; have {builtin_maze_ids()}")
    text = resources.files("blind_leads.data.mazes").joinpath(maze_id).read_text("utf-8")
    return load_maze(text, maze_id=int(maze_id.removeprefix("maze")))


def reset(maze: Maze, goal: tuple[int, int], rng: np.random.Generator) -> EnvState:
    """Fresh episode: agent placed uniformly over open cells excluding the goal."""
    if not maze.is_open(goal):
        raise ValueError(f"goal {goal} is not an open in-bounds cell")
    candidates = [cell for cell in maze.open_cells() if cell != goal]
    start = candidates[int(rng.integers(len(candidates)))]
    return EnvState(
        maze=maze,
        agent_pos=start,
        goal_pos=goal,
        visited={start},
        steps_taken=0,
        terminal=False,
    )


def step(state: EnvState, action: Action) -> StepOutcome:
    """Execute one action in place and return its outcome.

    Invalid moves (wall / off-grid) leave the position and visited set
    unchanged but still consume a step.
    """
    if state.terminal:
        raise ValueError("cannot step a terminal state")
    state.steps_taken += 1
    moved = False
    if action is Action.NONE:
        reward = REWARD_STEP
    else:
        dr, dc = DELTAS[action]
        dest = (state.agent_pos[0] + dr, state.agent_pos[1] + dc)
        if not state.maze.is_open(dest):
            reward = REWARD_INVALID
        else:
            moved = True
            if dest == state.goal_pos:
                reward = REWARD_GOAL
            elif dest in state.visited:
                reward = REWARD_REVISIT
            else:
                reward = REWARD_STEP
            state.agent_pos = dest
            state.visited.add(dest)
    if state.agent_pos == state.goal_pos or state.steps_taken >= MAX_STEPS:
        state.terminal = True
    return StepOutcome(reward=reward, moved=moved, terminal=state.terminal)


def execute_round(state: EnvState, actions: list[Action]) -> RoundResult:
    """Apply up to MAX_ACTIONS_PER_ROUND actions sequentially.

    Stops at the first terminal outcome or just after the first NONE;
    remaining actions are discarded.
    """
    if len(actions) > MAX_ACTIONS_PER_ROUND:
        raise ValueError(
            f"round of {len(actions)} actions exceeds limit {MAX_ACTIONS_PER_ROUND}"
        )
    executed = []
    total = 0.0
    for action in actions:
        outcome = step(state, action)
        executed.append((action, outcome))
        total += outcome.reward
        if outcome.terminal or action is Action.NONE:
            break
    return RoundResult(executed=tuple(executed), total_reward=total, next_state=state)


def observation_tensor(state: EnvState) -> np.ndarray:
    """(3, 8, 8) float32: wall mask, one-hot agent position, one-hot goal."""
    obs = np.zeros((3, GRID_SIZE, GRID_SIZE), dtype=np.float32)
    obs[0] = np.array(state.maze.walls, dtype=np.float32)
    obs[1][state.agent_pos] = 1.0
    obs[2][state.goal_pos] = 1.0
    return obs


def valid_actions(state: EnvState) -> set[Action]:
    """Moves that stay on open cells, plus NONE (always valid)."""
    out = {Action.NONE}
    r, c = state.agent_pos
    for action, (dr, dc) in DELTAS.items():
        if state.maze.is_open((r + dr, c + dc)):
            out.add(action)
    return out
