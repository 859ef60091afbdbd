"""Strict JSON game configuration.

Access structures are {"type":"threshold","n":3,"k":2} or
{"type":"general","n":3,"min_coalitions":[[1,2],[3]]}; utility models are
{"model":"common_good","N":[5,5,0.5],"c":1} or {"model":"greedy","A":3,"B":1}.
Participant ids are 1-based everywhere. Unknown keys are rejected rather
than ignored so typos cannot silently change an analysis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .access import AccessStructure, make_general, make_threshold
from .errors import ConfigError, RatshareError
from .game import CommonGoodUtilities, GreedyUtilities


@dataclass(frozen=True)
class GameConfig:
    access: AccessStructure
    utilities: CommonGoodUtilities | GreedyUtilities
    profile: tuple[float, ...] | None = None
    seed: int | None = None
    shards: int = 1


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def parse_access(obj) -> AccessStructure:
    if not isinstance(obj, dict):
        raise ConfigError("access: expected an object")
    kind = obj.get("type")
    try:
        if kind == "threshold":
            _require_keys(obj, {"type", "n", "k"}, {"type", "n", "k"}, "access")
            return make_threshold(_as_int(obj["n"], "access.n"), _as_int(obj["k"], "access.k"))
        if kind == "general":
            _require_keys(
                obj, {"type", "n", "min_coalitions"}, {"type", "n", "min_coalitions"}, "access"
            )
            coalitions = obj["min_coalitions"]
            if not isinstance(coalitions, list) or not all(
                isinstance(c, list) and all(isinstance(i, int) for i in c) for c in coalitions
            ):
                raise ConfigError("access.min_coalitions: expected a list of lists of ids")
            return make_general(_as_int(obj["n"], "access.n"), coalitions)
    except RatshareError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"access: {exc}") from exc
    raise ConfigError(f"access.type must be 'threshold' or 'general', got {kind!r}")


def parse_utilities(obj, n: int) -> CommonGoodUtilities | GreedyUtilities:
    if not isinstance(obj, dict):
        raise ConfigError("utilities: expected an object")
    model = obj.get("model")
    if model == "common_good":
        _require_keys(obj, {"model", "N", "c"}, {"model", "N", "c"}, "utilities")
        values = obj["N"]
        if not isinstance(values, list):
            raise ConfigError("utilities.N: expected a list of numbers")
        if len(values) != n:
            raise ConfigError(f"utilities.N: expected {n} values, got {len(values)}")
        good = tuple(_as_number(v, f"utilities.N[{i}]") for i, v in enumerate(values))
        cost = _as_number(obj["c"], "utilities.c")
        if cost <= 0:
            raise ConfigError("utilities.c must be positive")
        return CommonGoodUtilities(good_values=good, cost=cost)
    if model == "greedy":
        _require_keys(obj, {"model", "A", "B"}, {"model", "A", "B"}, "utilities")
        reward = _as_number(obj["A"], "utilities.A")
        penalty = _as_number(obj["B"], "utilities.B")
        if reward <= 0 or penalty <= 0:
            raise ConfigError("utilities.A and utilities.B must be positive")
        return GreedyUtilities(learning_reward=reward, exclusivity_penalty=penalty, n=n)
    raise ConfigError(f"utilities.model must be 'common_good' or 'greedy', got {model!r}")


def parse_game_config(obj) -> GameConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config: expected a JSON object")
    _require_keys(
        obj,
        {"access", "utilities", "profile", "seed", "shards"},
        {"access", "utilities"},
        "config",
    )
    access = parse_access(obj["access"])
    utilities = parse_utilities(obj["utilities"], access.n)
    profile = None
    if "profile" in obj:
        raw = obj["profile"]
        if not isinstance(raw, list):
            raise ConfigError("profile: expected a list of probabilities")
        if len(raw) != access.n:
            raise ConfigError(f"profile: expected {access.n} entries, got {len(raw)}")
        profile = tuple(_as_number(v, f"profile[{i}]") for i, v in enumerate(raw))
        if any(not 0 <= v <= 1 for v in profile):
            raise ConfigError("profile: probabilities must lie in [0, 1]")
    seed = _as_int(obj["seed"], "seed") if "seed" in obj else None
    shards = _as_int(obj["shards"], "shards") if "shards" in obj else 1
    if shards < 1:
        raise ConfigError("shards must be a positive integer")
    return GameConfig(access=access, utilities=utilities, profile=profile, seed=seed, shards=shards)


def load_game_config(path: str | Path) -> GameConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_game_config(raw)
