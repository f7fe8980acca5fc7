"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.

Auction datasets and their CSV form.

Columns: id, round_sold, deal_price, entrants, N, r1..rT, log_assess,
area_100m2, log_dist. `deal_price` is empty for an unsold auction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Sequence, Union

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger

from recurring_auction.errors import DatasetFormatError, MalformedObservationError
from recurring_auction.estimation.models import DEFAULT_DELTA, AuctionObservation, Covariates
from recurring_auction.utilities.file_operations import FileOperations

logger = Logger(__name__)

REQUIRED_COLUMNS = ("id", "round_sold", "deal_price", "entrants", "N", "log_assess", "area_100m2", "log_dist")
_RESERVE_COLUMN = re.compile(r"^r(\d+)$")


@dataclass
class AuctionDataset:
    observations: List[AuctionObservation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.observations)

    def __iter__(self) -> Iterator[AuctionObservation]:
        return iter(self.observations)

    def __getitem__(self, i: int) -> AuctionObservation:
        return self.observations[i]

    def subset(self, indices: Sequence[int]) -> "AuctionDataset":
        return AuctionDataset([self.observations[i] for i in indices])

    def covariate_matrix(self) -> np.ndarray:
        return np.array([o.covariates.as_array() for o in self.observations]).reshape(-1, 4)

    def sale_rates(self) -> List[float]:
        """Share of auctions sold in each round, then the share never sold."""
        if not self.observations:
            return []
        rounds = max(o.rounds for o in self.observations)
        counts = np.bincount([o.round_sold for o in self.observations], minlength=rounds + 1)
        shares = counts / len(self.observations)
        return [float(s) for s in shares[1:]] + [float(shares[0])]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for o in self.observations:
            row = {
                "id": o.auction_id,
                "round_sold": o.round_sold,
                "deal_price": o.deal_price if o.sold else np.nan,
                "entrants": o.entrants,
                "N": o.n_buyers,
            }
            row.update({f"r{t}": r for t, r in enumerate(o.reserves, start=1)})
            row.update(
                log_assess=o.covariates.log_assess,
                area_100m2=o.covariates.area_100m2,
                log_dist=o.covariates.log_dist,
            )
            rows.append(row)
        return pd.DataFrame(rows)


def write_dataset(dataset: AuctionDataset, path: Union[str, Path]) -> Path:
    text = dataset.to_frame().to_csv(index=False, lineterminator="\n")
    FileOperations.write_file(str(path), text)
    logger.info({"message": "dataset written", "path": str(path), "auctions": len(dataset)})
    return Path(path)


def read_dataset(path: Union[str, Path], delta: float = DEFAULT_DELTA) -> AuctionDataset:
    """
    Raises:
        DatasetFormatError: missing columns, unparsable numbers or an inconsistent row.
    """
    try:
        frame = pd.read_csv(path, dtype={"id": str})
    except (OSError, ValueError, pd.errors.ParserError) as e:
        raise DatasetFormatError(path=str(path), message=f"Cannot read dataset: {e}") from e

    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    reserve_columns = sorted(
        (int(m.group(1)), c) for c in frame.columns if (m := _RESERVE_COLUMN.match(str(c)))
    )
    if missing or not reserve_columns:
        raise DatasetFormatError(
            path=str(path), message=f"Missing columns: {missing or ['r1']}"
        )
    if [t for t, _ in reserve_columns] != list(range(1, len(reserve_columns) + 1)):
        raise DatasetFormatError(path=str(path), message="Reserve columns must be r1..rT")

    observations = []
    for row_number, row in enumerate(frame.itertuples(index=False), start=2):
        record = row._asdict()
        try:
            price = record["deal_price"]
            observations.append(
                AuctionObservation(
                    auction_id=str(record["id"]),
                    round_sold=int(record["round_sold"]),
                    deal_price=None if pd.isna(price) else float(price),
                    entrants=int(record["entrants"]),
                    n_buyers=int(record["N"]),
                    reserves=tuple(float(record[c]) for _, c in reserve_columns),
                    covariates=Covariates(
                        log_assess=float(record["log_assess"]),
                        area_100m2=float(record["area_100m2"]),
                        log_dist=float(record["log_dist"]),
                    ),
                    delta=delta,
                )
            )
        except (TypeError, ValueError, MalformedObservationError) as e:
            raise DatasetFormatError(path=str(path), row=row_number, message=str(e)) from e

    logger.info({"message": "dataset read", "path": str(path), "auctions": len(observations)})
    return AuctionDataset(observations)
