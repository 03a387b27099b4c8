"""Colorful interval step, four-point cover and the end-to-end pipeline."""

from pierce4.piercing.cover import cover_copies, four_cover, in_region_K, lift_to_line, region_R
from pierce4.piercing.intervals import colorful_interval_pierce
from pierce4.piercing.pipeline import (
    Branch,
    CertificateReport,
    PiercingCertificate,
    assign_points,
    pierce,
    prune_points,
    verify_certificate,
)

__all__ = [
    "Branch",
    "CertificateReport",
    "PiercingCertificate",
    "assign_points",
    "colorful_interval_pierce",
    "cover_copies",
    "four_cover",
    "in_region_K",
    "lift_to_line",
    "pierce",
    "prune_points",
    "region_R",
    "verify_certificate",
]
