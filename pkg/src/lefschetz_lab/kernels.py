"""Select the compiled kernels when available, else the pure-Python ones.

Set ``LEFSCHETZ_LAB_PURE=1`` to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("LEFSCHETZ_LAB_PURE", "") not in ("", "0"):
    from ._pykernels import bits_below, mask_rank, popcount, rank_mod_p, wedge_sign
else:
    try:
        from ._ckernels import bits_below, mask_rank, popcount, rank_mod_p, wedge_sign

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import bits_below, mask_rank, popcount, rank_mod_p, wedge_sign

__all__ = ["BACKEND", "bits_below", "mask_rank", "popcount", "rank_mod_p", "wedge_sign"]
