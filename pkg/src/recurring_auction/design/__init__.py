"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Entry subsidies paid to each entrant can replace the reserve sequence: with
reserves held at v_s, a per-entrant payment of (v_s − r_t) G(v*_t) / G(v*_(t−1))
leaves every interim payoff, and so every threshold, unchanged.
"""

from recurring_auction.design.certification import CertificationReport, certify
from recurring_auction.design.optimal_design import (
    DesignResult,
    RecurringAuctionDesigner,
    efficient_design,
    foc_residuals,
    objective_transform,
    revenue_design,
)
from recurring_auction.design.sweeps import FigureSweep, figure_sweep, reserve_fractions
from recurring_auction.design.tradeoff import TradeoffRow, design_tradeoff_report

__all__ = [
    "DesignResult",
    "RecurringAuctionDesigner",
    "efficient_design",
    "revenue_design",
    "foc_residuals",
    "objective_transform",
    "design_tradeoff_report",
    "TradeoffRow",
    "certify",
    "CertificationReport",
    "figure_sweep",
    "FigureSweep",
    "reserve_fractions",
]
