"""Monte Carlo decoding of a CSS pair over two independent binary symmetric channels.

Conventions: phase errors ``e_z`` are measured with ``H_C`` and decoded into
``e_C``; bit-flip errors ``e_x`` are measured with ``H_D`` and decoded into
``e_D``.  The recovery applied is ``X^{e_D} Z^{e_C}``.  A correction succeeds
when the residual error is a stabilizer, i.e. lies in the row space of the
*other* parity-check matrix.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp

from .gf2 import RowSpace, SparseBinaryMatrix, expand, quantum_rate

DEFAULT_MAX_ITER = 128
_CLIP = 1.0 - 1e-15


@dataclass(frozen=True)
class PauliChannelParams:
    """Crossover probability ``p``: X and Z flips are independent Bernoulli(p)."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p < 0.5:
            raise ValueError(f"crossover probability must be in [0, 0.5), got {self.p}")

    @property
    def x_only(self) -> float:
        return self.p - self.p**2

    @property
    def z_only(self) -> float:
        return self.p - self.p**2

    @property
    def both(self) -> float:
        return self.p**2


@dataclass
class ErrorPair:
    e_x: np.ndarray
    e_z: np.ndarray


@dataclass
class TrialRecord:
    error: ErrorPair
    decoded: ErrorPair
    success_x: bool
    success_z: bool
    iterations_used: int


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based stream for one trial of one experiment."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


def sample_error(params: PauliChannelParams, n: int, rng: np.random.Generator) -> ErrorPair:
    e_x = (rng.random(n) < params.p).astype(np.uint8)
    e_z = (rng.random(n) < params.p).astype(np.uint8)
    return ErrorPair(e_x, e_z)


def syndrome(h: SparseBinaryMatrix, e: np.ndarray) -> np.ndarray:
    """``h @ e`` over GF(2); ``e`` may be a single vector or a ``(B, n)`` batch."""
    e = np.asarray(e)
    if e.shape[-1] != h.n_cols:
        raise ValueError(f"error length {e.shape[-1]} != {h.n_cols} columns")
    s = (h.csr() @ e.T.astype(np.int64)).T % 2
    return s.astype(np.uint8)


class SyndromeBP:
    """Flooding sum-product decoder that searches for an error matching a syndrome.

    Messages are LLRs (positive means "no flip").  A check with syndrome bit 1
    flips the sign of its outgoing messages.  Decoding stops per word as soon
    as the hard decision reproduces the syndrome.
    """

    def __init__(self, h: SparseBinaryMatrix):
        self.h = h
        csr = h.csr()
        self.edge_check = np.repeat(np.arange(h.n_rows), np.diff(h.indptr))
        self.edge_var = h.indices.copy()
        E = len(self.edge_var)
        ones = np.ones(E)
        self._check_sum = sp.csr_matrix((ones, (self.edge_check, np.arange(E))), shape=(h.n_rows, E))
        self._var_sum = sp.csr_matrix((ones, (self.edge_var, np.arange(E))), shape=(h.n_cols, E))
        self._hT = csr

    def decode(self, s: np.ndarray, p: float, max_iter: int = DEFAULT_MAX_ITER):
        """Decode a ``(B, m)`` batch of syndromes.

        Returns ``(e_hat (B, n) uint8, converged (B,) bool, iterations (B,) int)``.
        """
        s = np.atleast_2d(np.asarray(s, dtype=np.uint8))
        B = s.shape[0]
        n = self.h.n_cols
        e_hat = np.zeros((B, n), dtype=np.uint8)
        iters = np.zeros(B, dtype=np.int64)
        converged = ~s.any(axis=1)
        active = np.flatnonzero(~converged)
        if active.size == 0 or max_iter <= 0:
            return e_hat, converged, iters
        if not 0.0 < p < 0.5:
            raise ValueError(f"decoder prior needs 0 < p < 0.5, got {p}")

        prior = math.log((1.0 - p) / p)
        # edge-major layout: (E, b) so sparse @ dense sums over edges
        sign_flip = np.where(s[active][:, self.edge_check].T == 1, -1.0, 1.0)
        q = np.full((len(self.edge_var), active.size), prior)
        target = s[active].T
        for it in range(1, max_iter + 1):
            t = np.clip(np.tanh(0.5 * q), -_CLIP, _CLIP)
            mag = np.log(np.maximum(np.abs(t), 1e-300))
            neg = (t < 0).astype(np.float64)
            mag_tot = self._check_sum @ mag
            neg_tot = self._check_sum @ neg
            ext_mag = np.exp(mag_tot[self.edge_check] - mag)
            ext_neg = neg_tot[self.edge_check] - neg
            sign = np.where(np.rint(ext_neg) % 2 == 1, -1.0, 1.0) * sign_flip
            r = 2.0 * np.arctanh(np.minimum(ext_mag, _CLIP)) * sign
            total = prior + self._var_sum @ r
            hard = (total < 0).astype(np.uint8)
            ok = np.all((self._hT @ hard.astype(np.int64)) % 2 == target, axis=0)
            if ok.any():
                done = active[ok]
                e_hat[done] = hard[:, ok].T
                converged[done] = True
                iters[done] = it
            if it == max_iter:
                rest = active[~ok]
                e_hat[rest] = hard[:, ~ok].T
                iters[rest] = it
                break
            keep = ~ok
            if not keep.any():
                break
            active = active[keep]
            q = (total[self.edge_var] - r)[:, keep]
            sign_flip = sign_flip[:, keep]
            target = target[:, keep]
        return e_hat, converged, iters


def syn_decode(h: SparseBinaryMatrix, s: np.ndarray, p: float, max_iter: int = DEFAULT_MAX_ITER):
    """Single-word convenience wrapper around :class:`SyndromeBP`."""
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (h.n_rows,):
        raise ValueError(f"syndrome length {s.shape} != {h.n_rows} rows")
    e, conv, it = SyndromeBP(h).decode(s[None, :], p, max_iter)
    return e[0], bool(conv[0]), int(it[0])


def classify_success(
    hc: SparseBinaryMatrix, hd: SparseBinaryMatrix, truth: ErrorPair, decoded: ErrorPair
) -> tuple[bool, bool]:
    """``(success_x, success_z)``: syndromes agree and the residual is a stabilizer."""
    return _classify(hc, hd, RowSpace(hc), RowSpace(hd), truth.e_x, truth.e_z, decoded.e_x, decoded.e_z)


def _classify(hc, hd, span_c: RowSpace, span_d: RowSpace, ex, ez, ex_hat, ez_hat):
    rx = np.atleast_2d(ex) ^ np.atleast_2d(ex_hat)
    rz = np.atleast_2d(ez) ^ np.atleast_2d(ez_hat)
    ok_x = ~syndrome(hd, rx).any(axis=1)
    ok_z = ~syndrome(hc, rz).any(axis=1)
    for ok, r, span in ((ok_x, rx, span_c), (ok_z, rz, span_d)):
        check = np.flatnonzero(ok & r.any(axis=1))
        if check.size:
            ok[check] = span.contains(r[check])
    if ok_x.shape[0] == 1:
        return bool(ok_x[0]), bool(ok_z[0])
    return ok_x, ok_z


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def reference_curves(p: float) -> tuple[float, float]:
    """``(1 - 2h(p), 1 - 2h(2p))``: Shannon-style limit and BDD bound for two BSCs."""
    bdd = 1 - 2 * binary_entropy(2 * p) if 2 * p <= 0.5 else float("nan")
    return 1 - 2 * binary_entropy(p), bdd


@dataclass
class ExperimentSummary:
    p: float
    n: int
    rate: float
    trials: int
    failures: int
    failure_rate: float
    ci_halfwidth: float
    mean_iters: float
    seed: int
    failures_x: int = 0
    failures_z: int = 0
    records: list[TrialRecord] = field(default_factory=list, repr=False)

    @property
    def failure_rate_x(self) -> float:
        return self.failures_x / self.trials

    @property
    def failure_rate_z(self) -> float:
        return self.failures_z / self.trials


class CssSimulator:
    """Caches decoders and row-space oracles for repeated experiments on one pair."""

    def __init__(self, hc: SparseBinaryMatrix, hd: SparseBinaryMatrix, rate: float | None = None):
        if hc.n_cols != hd.n_cols:
            raise ValueError("H_C and H_D must have the same number of columns")
        self.hc, self.hd = hc, hd
        self.n = hc.n_cols
        self.bp_c, self.bp_d = SyndromeBP(hc), SyndromeBP(hd)
        self.span_c, self.span_d = RowSpace(hc), RowSpace(hd)
        self._rate = rate

    @classmethod
    def from_candidate(cls, cand) -> CssSimulator:
        return cls(expand(cand.mc), expand(cand.md))

    @property
    def rate(self) -> float:
        if self._rate is None:
            self._rate = float(quantum_rate(self.hc, self.hd))
        return self._rate

    def sample(self, params: PauliChannelParams, seed: int, start: int, stop: int):
        ex = np.empty((stop - start, self.n), dtype=np.uint8)
        ez = np.empty_like(ex)
        for i, t in enumerate(range(start, stop)):
            err = sample_error(params, self.n, trial_rng(seed, t))
            ex[i], ez[i] = err.e_x, err.e_z
        return ex, ez

    def run_chunk(self, params: PauliChannelParams, max_iter: int, seed: int, start: int, stop: int):
        ex, ez = self.sample(params, seed, start, stop)
        # s_C measures phase errors, s_D measures bit flips
        ez_hat, _, it_c = self.bp_c.decode(syndrome(self.hc, ez), params.p, max_iter)
        ex_hat, _, it_d = self.bp_d.decode(syndrome(self.hd, ex), params.p, max_iter)
        ok_x, ok_z = _classify(self.hc, self.hd, self.span_c, self.span_d, ex, ez, ex_hat, ez_hat)
        ok_x, ok_z = np.atleast_1d(ok_x), np.atleast_1d(ok_z)
        return ex, ez, ex_hat, ez_hat, ok_x, ok_z, np.maximum(it_c, it_d)

    def run(
        self,
        params: PauliChannelParams,
        trials: int,
        max_iter: int = DEFAULT_MAX_ITER,
        seed: int = 0,
        batch_size: int = 1000,
        workers: int = 1,
        keep_records: bool = False,
    ) -> ExperimentSummary:
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")
        bounds = [(a, min(a + batch_size, trials)) for a in range(0, trials, batch_size)]
        job = lambda ab: self.run_chunk(params, max_iter, seed, *ab)  # noqa: E731
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                chunks = list(pool.map(job, bounds))
        else:
            chunks = [job(ab) for ab in bounds]

        fail = fail_x = fail_z = iters = 0
        records: list[TrialRecord] = []
        for ex, ez, ex_hat, ez_hat, ok_x, ok_z, it in chunks:
            fail += int(np.count_nonzero(~(ok_x & ok_z)))
            fail_x += int(np.count_nonzero(~ok_x))
            fail_z += int(np.count_nonzero(~ok_z))
            iters += int(it.sum())
            if keep_records:
                records.extend(
                    TrialRecord(ErrorPair(ex[i], ez[i]), ErrorPair(ex_hat[i], ez_hat[i]), bool(ok_x[i]), bool(ok_z[i]), int(it[i]))
                    for i in range(len(it))
                )
        f = fail / trials
        return ExperimentSummary(
            p=params.p,
            n=self.n,
            rate=self.rate,
            trials=trials,
            failures=fail,
            failure_rate=f,
            ci_halfwidth=1.96 * math.sqrt(f * (1 - f) / trials),
            mean_iters=iters / trials,
            seed=seed,
            failures_x=fail_x,
            failures_z=fail_z,
            records=records,
        )


def run_experiment(
    cand,
    params: PauliChannelParams,
    trials: int,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    **kwargs,
) -> ExperimentSummary:
    """Failure statistics for a :class:`~fourcycle.construct.CssCandidate`.

    A trial fails when either error type is left with a non-stabilizer
    residual.  ``mean_iters`` averages, per trial, the larger of the two
    decoders' iteration counts.  Results depend only on ``seed``, not on
    batching or ``workers``.
    """
    return CssSimulator.from_candidate(cand).run(params, trials, max_iter, seed, **kwargs)


RESULT_COLUMNS = ["p", "n", "rate", "trials", "failures", "failure_rate", "ci_halfwidth", "mean_iters", "seed", "shannon", "bdd"]


def results_csv(summaries: list[ExperimentSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULT_COLUMNS)
    for s in summaries:
        shannon, bdd = reference_curves(s.p)
        w.writerow(
            [
                repr(s.p),
                s.n,
                f"{s.rate:.6f}",
                s.trials,
                s.failures,
                f"{s.failure_rate:.6g}",
                f"{s.ci_halfwidth:.6g}",
                f"{s.mean_iters:.4f}",
                s.seed,
                f"{shannon:.6f}",
                f"{bdd:.6f}",
            ]
        )
    return buf.getvalue()


def summary_dict(s: ExperimentSummary) -> dict:
    d = asdict(s)
    d.pop("records")
    return d
