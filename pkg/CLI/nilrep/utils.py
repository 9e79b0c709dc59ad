from __future__ import annotations

import datetime
import os
import pathlib
import random
import sys
from fractions import Fraction

from .linalg import Vector
from .poly import PolyFun, exponents_of_degree

APP_NAME = "nilrep"

_quiet = False


def set_quiet(quiet: bool) -> None:
    """Silences progress lines for the rest of the process."""
    global _quiet
    _quiet = quiet


def progress(message: str) -> None:
    """Prints a progress line to stderr; stdout is reserved for JSON documents."""
    if not _quiet:
        print(message, file=sys.stderr, flush=True)


def get_log_dir() -> str:
    """Platform-appropriate directory for the error log."""
    if sys.platform == "win32":
        return os.path.join(os.environ.get('LOCALAPPDATA') or os.path.join(str(pathlib.Path.home()), 'AppData', 'Local'), APP_NAME)
    xdg_state = os.environ.get("XDG_STATE_HOME")
    if xdg_state:
        return os.path.join(xdg_state, APP_NAME)
    return os.path.join(str(pathlib.Path.home()), ".local", "state", APP_NAME)


def log_error(message: str, log_name: str = "error_log.txt") -> str:
    """Appends a timestamped message to the error log and returns the log path."""
    log_dir = get_log_dir()
    os.makedirs(log_dir, exist_ok=True)

    log_path = os.path.join(log_dir, log_name)
    timestamp = datetime.datetime.now().strftime("[%Y-%m-%d %H:%M:%S]")
    with open(log_path, "a", encoding="utf-8") as f:
        f.write(f"{timestamp} {message}\n")

    return log_path


def sampler(seed: int, label: str) -> random.Random:
    """Independent deterministic generator per check, so checks never shift each other's samples."""
    return random.Random(f"{seed}:{label}")


def random_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    """Rational with |numerator| <= height and 1 <= denominator <= height."""
    numerator = rng.randint(-height, height)
    while nonzero and numerator == 0:
        numerator = rng.randint(-height, height)
    return Fraction(numerator, rng.randint(1, height))


def random_element(rng: random.Random, dim: int, height: int) -> Vector:
    return tuple(random_rational(rng, height) for _ in range(dim))


def random_functional(rng: random.Random, dim: int, height: int) -> PolyFun:
    return PolyFun.linear(random_element(rng, dim, height))


def random_polynomial(rng: random.Random, nvars: int, degree: int, height: int, terms: int = 3) -> PolyFun:
    """Sparse polynomial of exact total degree `degree` with a handful of monomials of degree <= degree."""
    top = list(exponents_of_degree(nvars, degree))
    chosen = {rng.choice(top): random_rational(rng, height, nonzero=True)}
    for _ in range(terms - 1):
        d = rng.randint(0, degree)
        chosen[rng.choice(list(exponents_of_degree(nvars, d)))] = random_rational(rng, height)
    poly = PolyFun(nvars, chosen)
    if poly.degree != degree:
        return random_polynomial(rng, nvars, degree, height, terms)
    return poly
