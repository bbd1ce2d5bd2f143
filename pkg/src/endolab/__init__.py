"""endolab: exponential sums, simple-supercuspidal character values, transfer
factors, and conductor arithmetic for p-adic classical groups, with every
computable identity cross-checked against an independent route."""

from .residue import FFElem, FiniteField, MultCharacter, make_field
from .sums import KloostermanSpec, gauss_sum, kloosterman_eval
from .padic import LocalElem, PLFunc, TowerSpec, herbrand_compose, tame_hilbert
from .groups import GroupId, GroupKind, GroupMatrix
from .characters import CharElement, CharValue, SSCParams
from .endoscopy import Pair, PacketSolution, TransferValue
from .conductors import HeisParams

__all__ = [
    "FFElem",
    "FiniteField",
    "MultCharacter",
    "make_field",
    "KloostermanSpec",
    "gauss_sum",
    "kloosterman_eval",
    "LocalElem",
    "PLFunc",
    "TowerSpec",
    "herbrand_compose",
    "tame_hilbert",
    "GroupId",
    "GroupKind",
    "GroupMatrix",
    "CharElement",
    "CharValue",
    "SSCParams",
    "Pair",
    "PacketSolution",
    "TransferValue",
    "HeisParams",
]

__version__ = "0.1.0"
