"""Input sequences for driving the models: generators, decimation, CSV I/O.

Sequences are uniformly sampled.  The multisine generator exists for the
sampling-rate studies, so it guarantees two things by construction: the
waveform hits its positive and negative peaks exactly (centre-then-scale
normalization), and lower-rate variants are produced by decimating a
higher-rate master sequence so that shared time instants carry bit-identical
input values.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["InputSequence", "major_loop_sine", "multisine", "decaying_sine",
           "load_csv", "save_csv"]

# tolerated relative jitter when validating a uniform time base
_SPACING_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class InputSequence:
    """Uniformly sampled input: times, values and the sample rate in Hz."""

    t: np.ndarray
    x: np.ndarray
    rate: float

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=float)
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        if t.ndim != 1 or x.ndim != 1 or t.size != x.size:
            raise ValueError("t and x must be 1-D arrays of equal length")
        if t.size < 2:
            raise ValueError("need at least two samples")
        if not (math.isfinite(self.rate) and self.rate > 0.0):
            raise ValueError(f"rate must be positive, got {self.rate}")
        dt = np.diff(t)
        if np.any(np.abs(dt * self.rate - 1.0) > _SPACING_RTOL):
            raise ValueError("time base is not uniform at the stated rate")

    def __len__(self) -> int:
        return int(self.t.size)

    @property
    def duration(self) -> float:
        return float(self.t[-1] - self.t[0])

    def decimate(self, factor: int) -> InputSequence:
        """Every ``factor``-th sample; kept samples are bit-identical, so the
        decimated sequence coincides exactly with the original on shared
        instants."""
        if factor < 1 or len(self) <= factor:
            raise ValueError(f"decimation factor {factor} out of range")
        return InputSequence(self.t[::factor], self.x[::factor], self.rate / factor)


def major_loop_sine(amplitude: float, rate: float = 1000.0, periods: int = 1,
                    frequency: float = 1.0) -> InputSequence:
    """Sine sweep starting at the negative peak: ``A*sin(2*pi*f*t - pi/2)``.

    Starting a quarter period in makes the first excursion a monotone rise
    from ``-A`` to ``+A``, i.e. one full major loop per period when the
    amplitude matches the input bound.
    """
    if amplitude <= 0.0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")
    if periods < 1:
        raise ValueError(f"periods must be at least 1, got {periods}")
    if rate <= 2.0 * frequency:
        raise ValueError(f"rate {rate} Hz cannot sample a {frequency} Hz loop")
    n = round(rate * periods / frequency)
    t = np.arange(n) / rate
    return InputSequence(t, amplitude * np.sin(2.0 * math.pi * frequency * t - 0.5 * math.pi), rate)


def multisine(band: tuple[float, float] = (0.1, 10.0), tones: int = 20,
              peak: float = 1.0, bias: float = 0.0, duration: float = 10.0,
              rate: float = 10000.0, seed: int = 0) -> InputSequence:
    """Random-phase multisine, normalized then biased.

    Tone frequencies are log-spaced across ``band``; phases are drawn from a
    seeded generator so a (band, tones, seed) triple is reproducible.  The raw
    sum is centred on its midrange and scaled so the result touches
    ``bias + peak`` and ``bias - peak`` exactly.
    """
    lo, hi = band
    if not 0.0 < lo < hi:
        raise ValueError(f"band must satisfy 0 < lo < hi, got {band}")
    if tones < 1:
        raise ValueError(f"tones must be at least 1, got {tones}")
    if peak <= 0.0:
        raise ValueError(f"peak must be positive, got {peak}")
    if duration <= 0.0:
        raise ValueError(f"duration must be positive, got {duration}")
    if rate <= 2.0 * hi:
        raise ValueError(f"rate {rate} Hz is below the Nyquist rate for a {hi} Hz tone")
    freqs = np.geomspace(lo, hi, tones)
    phases = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi, tones)
    t = np.arange(round(rate * duration)) / rate
    raw = np.sum(np.sin(2.0 * math.pi * freqs[:, None] * t[None, :] + phases[:, None]), axis=0)
    raw -= 0.5 * (raw.max() + raw.min())
    return InputSequence(t, bias + peak * (raw / np.abs(raw).max()), rate)


def decaying_sine(band: tuple[float, float] = (0.5, 2.0), peak: float = 0.8,
                  bias: float = 0.0, duration: float = 10.0,
                  rate: float = 1000.0, seed: int = 0,
                  shrink: float = 3.0) -> InputSequence:
    """Single tone under an exponentially decaying envelope.

    Every reversal lands strictly inside the band spanned by the previous
    ones (classic nested minor loops), so the drive never sweeps back across
    a remembered turning point.  That makes it the right probe for studying
    pure per-step integration error, where crossing a stored corner would
    add an unrelated error source.  The tone frequency is drawn log-uniform
    from ``band`` and the phase uniformly, both from ``seed``; the envelope
    contracts by ``shrink`` over ``duration``.
    """
    lo, hi = band
    if not 0.0 < lo <= hi:
        raise ValueError(f"band must satisfy 0 < lo <= hi, got {band}")
    if peak <= 0.0:
        raise ValueError(f"peak must be positive, got {peak}")
    if duration <= 0.0:
        raise ValueError(f"duration must be positive, got {duration}")
    if shrink <= 1.0:
        raise ValueError(f"shrink must exceed 1, got {shrink}")
    if rate <= 2.0 * hi:
        raise ValueError(f"rate {rate} Hz is below the Nyquist rate for a {hi} Hz tone")
    rng = np.random.default_rng(seed)
    freq = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    phase = rng.uniform(0.0, 2.0 * math.pi)
    t = np.arange(round(rate * duration)) / rate
    envelope = peak * np.exp(-(math.log(shrink) / duration) * t)
    return InputSequence(t, bias + envelope * np.sin(2.0 * math.pi * freq * t + phase), rate)


def save_csv(path_or_buf, seq: InputSequence) -> None:
    """Write ``t,x`` rows with a header at full float precision."""
    def _write(buf) -> None:
        buf.write("t,x\n")
        for ti, xi in zip(seq.t, seq.x):
            buf.write(f"{ti:.17g},{xi:.17g}\n")

    if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
        with open(path_or_buf, "w") as fh:
            _write(fh)
    else:
        _write(path_or_buf)


def load_csv(path_or_buf, rate: float | None = None) -> InputSequence:
    """Read a sequence back from ``t,x`` rows, or from a bare ``x`` column.

    With a ``t`` column the rate is inferred from the (validated) uniform
    spacing; a bare ``x`` column needs an explicit ``rate``.
    """
    if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
        with open(path_or_buf) as fh:
            text = fh.read()
    else:
        text = path_or_buf.read()
    lines = [ln.strip() for ln in io.StringIO(text) if ln.strip()]
    if not lines:
        raise ValueError("empty input file")
    header = [col.strip() for col in lines[0].split(",")]
    if header == ["t", "x"]:
        ts, xs = [], []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 2:
                raise ValueError(f"line {i}: expected 't,x', got {ln!r}")
            try:
                ts.append(float(parts[0]))
                xs.append(float(parts[1]))
            except ValueError:
                raise ValueError(f"line {i}: not numeric: {ln!r}") from None
        t = np.array(ts)
        if len(t) < 2:
            raise ValueError("need at least two samples")
        inferred = 1.0 / (t[1] - t[0])
        if rate is not None and abs(rate - inferred) > _SPACING_RTOL * rate:
            raise ValueError(f"stated rate {rate} Hz does not match time base ({inferred} Hz)")
        return InputSequence(t, np.array(xs), inferred)
    if header == ["x"]:
        if rate is None:
            raise ValueError("a bare x column needs an explicit rate")
        xs = []
        for i, ln in enumerate(lines[1:], start=2):
            if "," in ln:
                raise ValueError(f"line {i}: expected a single value, got {ln!r}")
            try:
                xs.append(float(ln))
            except ValueError:
                raise ValueError(f"line {i}: not numeric: {ln!r}") from None
        t = np.arange(len(xs)) / rate
        return InputSequence(t, np.array(xs), rate)
    raise ValueError(f"expected header 't,x' or 'x', got {lines[0]!r}")
