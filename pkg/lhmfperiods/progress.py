"""
Progress bars for long table and verification runs
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

import sys
from abc import ABC, abstractmethod
from typing import Optional, Type

from lhmfperiods.logger import logger

try:
    from rich import progress as RICH_PROGRESS
except ImportError:
    RICH_PROGRESS = None

try:
    from tqdm import tqdm as TQDM_PROGRESS
except ImportError:
    TQDM_PROGRESS = None

_logger = logger.getChild('progress')


class AbstractProgressBackend(ABC):
    """Progress backend counting finished work items (table cells, checks)"""

    def __init__(self, unit: str = 'cells'):
        self.unit = unit

    @abstractmethod
    def start_task(self, *, description: str = None, total: int = None):
        """
        Start counting
        :param description: task label
        :param total: number of work items, None if unknown
        """

    @abstractmethod
    def update(self, *, description: str = None, advance: int = None):
        """
        Count finished items
        :param description: new label
        :param advance: number of items finished since the last update
        """

    @abstractmethod
    def fail(self):
        """Runs on Progress.__exit__ if the context raises"""

    @abstractmethod
    def stop(self):
        """Close the bar"""


class NoProgressBarBackend(AbstractProgressBackend):
    """silent backend, used for --quiet and machine readable output"""

    def start_task(self, *, description: str = None, total: int = None):
        pass

    def update(self, *, description: str = None, advance: int = None):
        pass

    def fail(self):
        pass

    def stop(self):
        pass


class AsciiBackend(AbstractProgressBackend):
    """one '#' per finished item on stderr"""

    def __init__(self, unit: str = 'cells'):
        super().__init__(unit)
        self._done = 0
        self._total = None
        self._closed = False

    @staticmethod
    def _write(text: str):
        sys.stderr.write(text)
        sys.stderr.flush()

    def start_task(self, *, description: str = None, total: int = None):
        self._done = 0
        self._total = total
        self._closed = False
        self._write(f"{description or ''} [")

    def update(self, *, description: str = None, advance: int = None):
        if not advance or self._closed:
            return
        self._done += advance
        self._write("#" * advance)
        if self._total is not None and self._done >= self._total:
            self._write(f"] {self._done} {self.unit}\n")
            self._closed = True

    def fail(self):
        if not self._closed:
            self._write(f"] failed after {self._done} {self.unit}\n")
            self._closed = True

    def stop(self):
        if not self._closed:
            self._write(f"] {self._done} {self.unit}\n")
            self._closed = True


class TqdmBackend(AbstractProgressBackend):
    """tqdm based backend"""

    BAR_FORMAT = "{desc} {bar:20} {n_fmt}/{total_fmt} {unit} [{elapsed}<{remaining}]"
    BAR_FORMAT_INF = "{desc} {n_fmt} {unit} [{elapsed}]"

    def __init__(self, unit: str = 'cells'):
        super().__init__(unit)
        self._progress = None

    def start_task(self, *, description: str = None, total: int = None):
        self._progress = TQDM_PROGRESS(
            total=total,
            unit=self.unit,
            desc=description,
            bar_format=self.BAR_FORMAT if total else self.BAR_FORMAT_INF,
            ascii=' #',
            file=sys.stderr,
        )

    def update(self, *, description: str = None, advance: int = None):
        if description:
            self._progress.set_description_str(description)
        if advance:
            self._progress.update(advance)

    def fail(self):
        self._progress.set_postfix_str("failed")

    def stop(self):
        self._progress.close()
        self._progress = None


class RichBackend(AbstractProgressBackend):
    """rich.progress based backend"""

    def __init__(self, unit: str = 'cells'):
        super().__init__(unit)
        self._progress = None
        self._task_id = None

    def start_task(self, *, description: str = None, total: int = None):
        self._progress = RICH_PROGRESS.Progress(
            RICH_PROGRESS.TextColumn("[progress.description]{task.description}"),
            RICH_PROGRESS.BarColumn(20),
            RICH_PROGRESS.MofNCompleteColumn(),
            RICH_PROGRESS.TextColumn(self.unit),
            RICH_PROGRESS.TimeElapsedColumn(),
            RICH_PROGRESS.TimeRemainingColumn(),
            transient=False,
        )
        self._progress.start()
        self._task_id = self._progress.add_task(description or '', total=total)

    def update(self, *, description: str = None, advance: int = None):
        kwargs = {}
        if description is not None:
            kwargs['description'] = description
        if advance is not None:
            kwargs['advance'] = advance
        self._progress.update(self._task_id, **kwargs)

    def fail(self):
        task = self._progress.tasks[self._task_id]
        self._progress.update(self._task_id, description=f"[red]{task.description}")

    def stop(self):
        self._progress.stop()
        self._progress = None


def find_backend() -> Type[AbstractProgressBackend]:
    """first available of rich, tqdm, ascii"""
    if RICH_PROGRESS is not None:
        return RichBackend
    if TQDM_PROGRESS is not None:
        return TqdmBackend
    return AsciiBackend


class Progress:
    """
    Context manager around a backend:
        with Progress(total=35, description='table') as bar:
            bar.update(advance=1)
    """

    __DEFAULT_BACKEND = find_backend()

    def __init__(self, backend: Optional[Type[AbstractProgressBackend]] = None, *,
                 description: str = None, total: int = None, unit: str = 'cells'):
        if backend is None:
            backend = Progress.__DEFAULT_BACKEND
        self._backend = backend(unit)
        self._description = description
        self._total = total

    @classmethod
    def set_default_backend(cls, backend: Type[AbstractProgressBackend]):
        if not (isinstance(backend, type) and issubclass(backend, AbstractProgressBackend)):
            raise TypeError(f"invalid progress backend {backend!r}")
        _logger.debug(f"progress backend {backend.__name__}")
        cls.__DEFAULT_BACKEND = backend

    def update(self, *, description: str = None, advance: int = None):
        self._backend.update(description=description, advance=advance)

    def __enter__(self):
        self._backend.start_task(description=self._description, total=self._total)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type:
            self._backend.fail()
            return False
        self._backend.stop()
        return False


__all__ = (
    'Progress',
    'AbstractProgressBackend',
    'NoProgressBarBackend',
    'AsciiBackend',
    'TqdmBackend',
    'RichBackend',
    'RICH_PROGRESS',
    'TQDM_PROGRESS',
    'find_backend',
)
