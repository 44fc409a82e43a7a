"""Counter-based uniform stream shared by both kernel backends.

Draw ``c`` of stream ``key`` is ``mix(key + (c + 1) * GOLDEN)``: the SplitMix64
output at position ``c``, so any draw is addressable without generating its
predecessors.  Uniforms take the top 53 bits and land in ``(0, 1]``.
"""
MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

SPHERE_STREAM = 1
SIMPLEX_STREAM = 2


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, stream: int) -> int:
    """Derive the 64-bit key of an independent stream from a user seed."""
    if seed < 0 or seed > MASK64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return mix64(mix64(seed) + stream * GOLDEN)


def uniform(key: int, counter: int) -> float:
    """Scalar reference implementation (used by tests)."""
    x = mix64(key + (counter + 1) * GOLDEN)
    return ((x >> 11) + 1) * 2.0**-53
