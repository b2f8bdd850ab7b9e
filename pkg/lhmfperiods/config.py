"""
Numerical configuration shared by all commands
(C) 2023 Yaroshenko Dmytro (https://github.com/o-murphy)

This program is free software; you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation; either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program; if not, write to the Free Software
Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA
"""

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from typing import Optional

import mpmath as mp

from lhmfperiods.exceptions import DataError
from lhmfperiods.logger import logger

_logger = logger.getChild('config')

OUTPUT_FORMATS = ('pretty', 'csv', 'json')


@dataclass(frozen=True)
class Config:
    """
    Truncation, tolerance and output parameters.
    Echoed (with its digest) into every output record.
    """
    precision: int = 30              # working decimal digits
    quad_tol: float = 1e-12          # quadrature target error
    matrix_bound: int = 400          # max|entry| shell bound for Gamma sums
    series_terms: int = 60           # q-expansion truncation order
    orbit_bound: int = 1500          # minimal leading coefficient bound in f_{k,P}
    pole_guard: float = 1e-3
    shell_safety: float = 10.0       # factor on the last shell magnitude
    decimals: int = 5
    full: bool = False
    output: str = 'pretty'
    cache_dir: Optional[str] = None
    k_max: int = 7

    def __post_init__(self):
        if self.precision < 15:
            raise DataError(f"precision must be at least 15 digits, got {self.precision}")
        for name in ('quad_tol', 'pole_guard', 'shell_safety'):
            if not getattr(self, name) > 0:
                raise DataError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ('matrix_bound', 'series_terms', 'orbit_bound', 'k_max'):
            if getattr(self, name) < 1:
                raise DataError(f"{name} must be a positive integer, got {getattr(self, name)}")
        if self.decimals < 0:
            raise DataError(f"decimals must be non-negative, got {self.decimals}")
        if self.output not in OUTPUT_FORMATS:
            raise DataError(f"unknown output format {self.output!r}, "
                            f"expected one of {', '.join(OUTPUT_FORMATS)}")

    def apply(self) -> 'Config':
        """set the working precision of mpmath"""
        mp.mp.dps = self.precision
        _logger.debug(f"working precision {self.precision} digits")
        return self

    def replace(self, **changes) -> 'Config':
        """copy with changed fields"""
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        """plain dict echo of the numeric parameters"""
        return dataclasses.asdict(self)

    def digest(self) -> str:
        """short content hash of the parameters that influence numbers"""
        payload = {key: value for key, value in self.to_dict().items()
                   if key not in ('output', 'cache_dir', 'full', 'decimals')}
        data = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
        return hashlib.sha256(data).hexdigest()[:12]


DEFAULT_CONFIG = Config()


__all__ = ('Config', 'DEFAULT_CONFIG', 'OUTPUT_FORMATS')
