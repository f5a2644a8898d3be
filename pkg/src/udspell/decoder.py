"""Dictionary-guided beam search over pruned lattices, plus an exhaustive
oracle decoder used for verification.

A path's score is its summed candidate log-probabilities plus eta times the
altered-span-match reward; raw-span matches fix positions to the input
character before the search starts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .dictionary import UserDictionary, asm_reward, rsm_fixed_positions
from .errors import DecodeError
from .lattice import CorrectionPath, Lattice, PruneConfig, prune
from .ecm import Edit


@dataclass(frozen=True)
class DecodeConfig:
    eta: float = 4.0
    beam_size: int = 20
    prune: PruneConfig = field(default_factory=PruneConfig)
    asm_count_mode: str = "covered"

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise DecodeError(f"eta must be >= 0, got {self.eta}")
        if self.beam_size < 1:
            raise DecodeError(f"beam_size must be >= 1, got {self.beam_size}")
        if self.asm_count_mode not in ("covered", "altered"):
            raise DecodeError(f"unknown asm count mode {self.asm_count_mode!r}")


def _effective_positions(
    lat: Lattice, dic: UserDictionary, cfg: DecodeConfig
) -> list[list[tuple[str, float]]]:
    """Pruned candidate lists with raw-span-matched positions fixed to the input.

    A fixed position whose input character is absent from its candidate
    list contributes 0.0 raw score (the character is forced, not scored).
    Dictionary guidance as a whole is scaled by eta, so eta == 0 disables
    span fixing along with the occurrence reward and the decode reduces to
    the per-position argmax.
    """
    plat = prune(lat, cfg.prune)
    positions = [[(c.token, c.logp) for c in cands] for cands in plat.positions]
    for j, cands in enumerate(positions):
        if not cands:
            raise DecodeError(f"lattice {lat.id!r}: empty position {j} after pruning")
    if cfg.eta > 0 and len(dic) and len(lat.input):
        for j in rsm_fixed_positions(lat.input, dic):
            ch = lat.input[j]
            lp = next((lp for t, lp in positions[j] if t == ch), 0.0)
            positions[j] = [(ch, lp)]
    return positions


def _reward(covered: int, altered: int, mode: str) -> int:
    mask = covered & altered if mode == "altered" else covered
    return mask.bit_count()


class _Hyp:
    __slots__ = ("state", "covered", "altered", "raw", "total", "parent", "token")

    def __init__(self, state, covered, altered, raw, total, parent, token):
        self.state = state
        self.covered = covered
        self.altered = altered
        self.raw = raw
        self.total = total
        self.parent = parent
        self.token = token

    def tokens(self) -> str:
        out = []
        h = self
        while h.parent is not None:
            out.append(h.token)
            h = h.parent
        return "".join(reversed(out))


def _fast_key(h: _Hyp) -> tuple:
    # higher total, then higher raw, then fewer altered positions
    return (-h.total, -h.raw, h.altered.bit_count())


def _tie_key(h: _Hyp) -> tuple:
    # full deterministic order: _fast_key plus lexicographically smallest tokens
    return _fast_key(h) + (h.tokens(),)


def _better(a: _Hyp, b: _Hyp) -> bool:
    """True if a outranks b; token strings are only built on exact score ties."""
    ka, kb = _fast_key(a), _fast_key(b)
    if ka != kb:
        return ka < kb
    return a.tokens() < b.tokens()


def _path_from_hyp(h: _Hyp, cfg: DecodeConfig) -> CorrectionPath:
    return CorrectionPath(
        tokens=h.tokens(),
        raw_score=h.raw,
        dict_score=_reward(h.covered, h.altered, cfg.asm_count_mode),
        eta=cfg.eta,
    )


def decode(lat: Lattice, dic: UserDictionary, cfg: DecodeConfig | None = None) -> CorrectionPath:
    """Beam search for the path maximizing raw score + eta * dictionary reward."""
    cfg = cfg or DecodeConfig()
    positions = _effective_positions(lat, dic, cfg)
    ac = dic.automaton
    step = ac.step
    ends = ac.end_lengths
    mode = cfg.asm_count_mode
    eta = cfg.eta
    # future rewards depend only on the matcher state and the altered/covered
    # bits reachable by a term still in progress
    window = max(1, ac.max_term_len)
    input_s = lat.input

    beam = [_Hyp(0, 0, 0, 0.0, 0.0, None, "")]
    for j, cands in enumerate(positions):
        wshift = max(0, j + 2 - window)
        merged: dict[tuple, _Hyp] = {}
        bit = 1 << j
        in_ch = input_s[j]
        for hyp in beam:
            for tok, lp in cands:
                altered = hyp.altered | bit if tok != in_ch else hyp.altered
                state = step(hyp.state, tok)
                covered = hyp.covered
                for ln in ends(state):
                    span = ((1 << ln) - 1) << (j - ln + 1)
                    if altered & span:
                        covered |= span
                raw = hyp.raw + lp
                total = raw + eta * _reward(covered, altered, mode)
                new = _Hyp(state, covered, altered, raw, total, hyp, tok)
                key = (state, altered >> wshift, covered >> wshift)
                old = merged.get(key)
                if old is None or _better(new, old):
                    merged[key] = new
        # stable sort on score keys keeps cutoff deterministic; exact
        # lexicographic tie-breaking is applied to the completed beam below
        beam = sorted(merged.values(), key=_fast_key)[: cfg.beam_size]
    best = min(beam, key=_tie_key)
    return _path_from_hyp(best, cfg)


DEFAULT_EXHAUSTIVE_BOUND = 10**6


def decode_exhaustive(
    lat: Lattice,
    dic: UserDictionary,
    cfg: DecodeConfig | None = None,
    max_paths: int = DEFAULT_EXHAUSTIVE_BOUND,
) -> CorrectionPath:
    """Enumerate every post-prune path and return the exact argmax.

    Refuses lattices whose post-prune path count exceeds ``max_paths``.
    Shares the scoring and tie-breaking rules with decode(), so it serves
    as its brute-force oracle.
    """
    cfg = cfg or DecodeConfig()
    positions = _effective_positions(lat, dic, cfg)
    count = 1
    for cands in positions:
        count *= len(cands)
        if count > max_paths:
            raise DecodeError(
                f"lattice {lat.id!r}: path count exceeds exhaustive bound {max_paths}"
            )
    n = len(positions)
    input_s = lat.input
    best: tuple | None = None
    best_result: tuple | None = None
    tokens: list[str] = [""] * n

    def visit(j: int, raw: float) -> None:
        nonlocal best, best_result
        if j == n:
            path = "".join(tokens)
            reward = asm_reward(input_s, path, dic, cfg.asm_count_mode) if len(dic) else 0
            total = raw + cfg.eta * reward
            altered = sum(1 for a, b in zip(path, input_s) if a != b)
            key = (-total, -raw, altered, path)
            if best is None or key < best:
                best = key
                best_result = (path, raw, reward)
            return
        for tok, lp in positions[j]:
            tokens[j] = tok
            visit(j + 1, raw + lp)

    visit(0, 0.0)
    assert best_result is not None
    path, raw, reward = best_result
    return CorrectionPath(tokens=path, raw_score=raw, dict_score=reward, eta=cfg.eta)


@dataclass
class CorpusDiagnostics:
    sentence_count: int = 0
    avg_path_count: float = 0.0
    flip_count: int = 0  # sentences whose output differs from the input
    errors: list[tuple[str, str]] = field(default_factory=list)  # (lattice id, message)


def path_edits(input: str, path: str) -> list[Edit]:
    """Single-character edits turning input into path."""
    return [Edit(i, a, b) for i, (a, b) in enumerate(zip(input, path)) if a != b]


def decode_corpus(
    lats: Iterable[Lattice], dic: UserDictionary, cfg: DecodeConfig | None = None
) -> tuple[list[tuple[Lattice, CorrectionPath]], CorpusDiagnostics]:
    """Decode a lattice stream; per-record failures are reported and skipped."""
    from .lattice import candidate_path_count

    cfg = cfg or DecodeConfig()
    results: list[tuple[Lattice, CorrectionPath]] = []
    diag = CorpusDiagnostics()
    total_paths = 0
    for lat in lats:
        try:
            path = decode(lat, dic, cfg)
        except DecodeError as e:
            diag.errors.append((lat.id, str(e)))
            continue
        results.append((lat, path))
        diag.sentence_count += 1
        total_paths += candidate_path_count(lat, cfg.prune).count
        diag.flip_count += int(path.tokens != lat.input)
    if diag.sentence_count:
        diag.avg_path_count = total_paths / diag.sentence_count
    return results, diag
