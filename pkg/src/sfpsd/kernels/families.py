"""Kernel family catalogue - one entry per matrix family m1a..m18."""

from dataclasses import dataclass
from enum import Enum
from typing import Literal, Optional

OracleKind = Literal["discrete", "quadrature"]


class KernelFamily(str, Enum):
    THETA3 = "THETA3"
    DN = "DN"
    ZETA_TAIL = "ZETA_TAIL"
    GAMMA = "GAMMA"
    SIN_POWER = "SIN_POWER"
    BETA = "BETA"
    HYPERGEOM = "HYPERGEOM"
    ETA_GAMMA_ZETA = "ETA_GAMMA_ZETA"
    ETA_GAMMA1_ZETA = "ETA_GAMMA1_ZETA"
    POLYGAMMA_ZETA = "POLYGAMMA_ZETA"
    RIEMANN_XI = "RIEMANN_XI"
    HURWITZ_TAIL = "HURWITZ_TAIL"
    HURWITZ_DIFF = "HURWITZ_DIFF"
    LERCH = "LERCH"
    AW_QGAMMA = "AW_QGAMMA"
    Q_HYPERGEOM = "Q_HYPERGEOM"
    MODULAR_E = "MODULAR_E"
    MODULAR_G = "MODULAR_G"

    @classmethod
    def parse(cls, name: str) -> "KernelFamily":
        """Accept a tag (any case) or a family label such as 'm4a'."""
        key = name.strip()
        try:
            return cls(key.upper())
        except ValueError:
            pass
        for family, info in FAMILY_INFO.items():
            if key.lower() in info.label.split("/"):
                return family
        raise ValueError(f"unknown kernel family {name!r}")


@dataclass(frozen=True)
class FamilyInfo:
    """Static description of a kernel family.

    Args:
        label: Catalogue label(s) of the family; "a" is one factor, "b" the
            Hadamard product over several factors
        formula: Entry formula at indices (j, k)
        point_fields: Names of the per-index parameters
        shared_fields: Names of the family-level parameters
        oracle: Independent Gram route available, if any
    """

    label: str
    formula: str
    point_fields: tuple[str, ...]
    shared_fields: tuple[str, ...]
    oracle: Optional[OracleKind] = None

    @property
    def point_arity(self) -> int:
        return len(self.point_fields)

    @property
    def has_oracle(self) -> bool:
        return self.oracle is not None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "formula": self.formula,
            "point_fields": list(self.point_fields),
            "shared_fields": list(self.shared_fields),
            "oracle": self.oracle,
        }


FAMILY_INFO: dict[KernelFamily, FamilyInfo] = {
    KernelFamily.THETA3: FamilyInfo(
        "m1a/m1b", "theta3(v_j - conj(v_k), q)", ("v",), ("q",), "discrete"
    ),
    KernelFamily.DN: FamilyInfo(
        "m2a/m2b", "dn(2K (v_j - conj(v_k)))", ("v",), ("q",), "discrete"
    ),
    KernelFamily.ZETA_TAIL: FamilyInfo(
        "m3a/m3b", "1/(s-1) - zeta(s)/s, s = s_j + conj(s_k)", ("s",), (), "quadrature"
    ),
    KernelFamily.GAMMA: FamilyInfo(
        "m4a/m4b", "Gamma(z_j + conj(z_k))", ("z",), (), "quadrature"
    ),
    KernelFamily.SIN_POWER: FamilyInfo(
        "m5a/m5b", "1 / sin^lambda(phi_j + phi_k)", ("phi",), ("lambda",)
    ),
    KernelFamily.BETA: FamilyInfo(
        "m6a/m6b", "B(p_j + conj(p_k), q_j + conj(q_k))", ("p", "q"), (), "quadrature"
    ),
    KernelFamily.HYPERGEOM: FamilyInfo(
        "m7", "rFs(upper; lower | z_j conj(z_k))", ("z",), ("upper", "lower")
    ),
    KernelFamily.ETA_GAMMA_ZETA: FamilyInfo(
        "m8", "(1 - 2^(1-s)) Gamma(s) zeta(s), s = s_j + conj(s_k)", ("s",), (), "quadrature"
    ),
    KernelFamily.ETA_GAMMA1_ZETA: FamilyInfo(
        "m9", "(1 - 2^(1-s)) Gamma(s+1) zeta(s), s = s_j + conj(s_k)", ("s",), (), "quadrature"
    ),
    KernelFamily.POLYGAMMA_ZETA: FamilyInfo(
        "m10", "(s)_p zeta(p+s) / sin(pi s), s = s_j + conj(s_k)", ("s",), ("p",), "quadrature"
    ),
    KernelFamily.RIEMANN_XI: FamilyInfo("m11", "Xi(z_j - conj(z_k))", ("z",), ()),
    KernelFamily.HURWITZ_TAIL: FamilyInfo(
        "m12",
        "(a^-s + (1+a)^-s - zeta(s,a))/s + (1+a)^(1-s) s^-1 / (s-1), s = s_j + conj(s_k)",
        ("s",),
        ("a",),
        "quadrature",
    ),
    KernelFamily.HURWITZ_DIFF: FamilyInfo(
        "m13",
        "Gamma(s) (zeta(s, (a+1)/4) - zeta(s, (a+3)/4)), s = s_j + conj(s_k)",
        ("s",),
        ("a",),
        "quadrature",
    ),
    KernelFamily.LERCH: FamilyInfo(
        "m14", "Gamma(s) Phi(z, s, a), s = s_j + conj(s_k)", ("s",), ("z", "a"), "quadrature"
    ),
    KernelFamily.AW_QGAMMA: FamilyInfo(
        "m15",
        "Gamma_q(a_j1+a_k1) Gamma_q(a_j2+a_k2) / Gamma_q(a_j1+a_j2+a_k1+a_k2)",
        ("alpha1", "alpha2"),
        ("q",),
    ),
    KernelFamily.Q_HYPERGEOM: FamilyInfo(
        "m16",
        "rAs^(alpha)(upper; lower; q; z_j conj(z_k))",
        ("z",),
        ("upper", "lower", "q", "alpha", "radius"),
    ),
    KernelFamily.MODULAR_E: FamilyInfo(
        "m17",
        "rEs(upper; lower; q, p; A | z_j conj(z_k))",
        ("z",),
        ("upper", "lower", "q", "p", "coeff"),
    ),
    KernelFamily.MODULAR_G: FamilyInfo(
        "m18",
        "rGs(upper; lower; q, p; B | z_j conj(z_k))",
        ("z",),
        ("upper", "lower", "q", "p", "coeff"),
    ),
}


def family_info(family: KernelFamily) -> FamilyInfo:
    """Catalogue entry of a family (label, point arity, oracle availability)."""
    return FAMILY_INFO[KernelFamily(family)]
