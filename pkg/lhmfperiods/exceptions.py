"""
lhmfperiods exceptions.
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
import logging
import sys
from enum import IntEnum
from functools import wraps


class SysExit(IntEnum):
    """Process exit codes of the command line tool"""
    EX_OK = 0
    EX_FAILURE = 1  # verification failure or unhandled error
    EX_INPUT = 2  # invalid input, excluded principal-value regime
    EX_SOFTWARE = 70  # internal software error


class Errx(Exception):
    """
    Base error of the package.
    Carries the exit code the command line tool terminates with.
    """
    exit_code = SysExit.EX_FAILURE

    def __init__(self, *args, exit_code: SysExit = None):
        super().__init__(*args)
        if isinstance(exit_code, SysExit):
            self.exit_code = exit_code


class DataError(Errx, ValueError, TypeError):
    """EX_INPUT: invalid mathematical input"""
    exit_code = SysExit.EX_INPUT


class UsageError(Errx):
    """EX_INPUT: command line misuse"""
    exit_code = SysExit.EX_INPUT


class ExceptionalSetError(DataError):
    """
    A point (or the CM point of a form) lies on the exceptional set,
    where only principal-value periods exist
    """


class PoleProximityError(DataError):
    """Evaluation point within the pole guard of a pole"""

    def __init__(self, *args, pole=None, form=None):
        super().__init__(*args)
        self.pole = pole
        self.form = form


class DiscriminantMismatchError(DataError):
    """Arithmetic mixing two different square root fields"""


class KernelError(DataError):
    """Coefficients do not lie in the kernel of the period polynomial map"""

    def __init__(self, *args, residual=None):
        super().__init__(*args)
        self.residual = residual


class UnsupportedError(Errx):
    """EX_INPUT: request outside the supported weight range"""
    exit_code = SysExit.EX_INPUT


class VerificationError(Errx):
    """EX_FAILURE: a verification suite reported failed checks"""
    exit_code = SysExit.EX_FAILURE


class SoftwareError(Errx):
    """EX_SOFTWARE"""
    exit_code = SysExit.EX_SOFTWARE


def except_and_safe_exit(_logger: logging.Logger = None):
    """decorator to handle exceptions and exit safely"""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Errx as e:
                if str(e) and _logger:
                    if _logger.getEffectiveLevel() <= logging.DEBUG:
                        _logger.exception(e)
                    else:
                        _logger.error(e)
                sys.exit(e.exit_code)
            # pylint: disable=broad-exception-caught
            except Exception as e:
                if _logger:
                    if _logger.getEffectiveLevel() <= logging.DEBUG:
                        _logger.exception(f"Unhandled exception occurred: {e}")
                    else:
                        _logger.error(f"Unhandled exception occurred: {e}")
                sys.exit(SysExit.EX_FAILURE)

        return wrapper

    return decorator


__all__ = (
    'SysExit',
    'Errx',
    'DataError',
    'UsageError',
    'ExceptionalSetError',
    'PoleProximityError',
    'DiscriminantMismatchError',
    'KernelError',
    'UnsupportedError',
    'VerificationError',
    'SoftwareError',
    'except_and_safe_exit',
)
