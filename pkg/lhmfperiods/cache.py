"""
On-disk JSON cache for re-derivable artifacts
(q-expansion coefficients, Petersson norms)
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

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, List, Optional

from lhmfperiods.exceptions import DataError
from lhmfperiods.logger import logger

_logger = logger.getChild('cache')


class CoefficientCache:
    """
    Directory of <kind>-<hash>.json files, one per parameter set.
    Entries are written once and never modified.
    """

    SUFFIX = '.json'

    def __init__(self, directory):
        self.directory = Path(directory).expanduser()
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise DataError(f"cannot use cache directory {self.directory}: {e}") from e

    @staticmethod
    def key(kind: str, params: dict) -> str:
        payload = json.dumps({'kind': kind, **params}, separators=(",", ":"), sort_keys=True)
        return f"{kind}-{hashlib.sha256(payload.encode('utf-8')).hexdigest()[:16]}"

    def _path(self, kind: str, params: dict) -> Path:
        return self.directory / (self.key(kind, params) + self.SUFFIX)

    def get(self, kind: str, params: dict) -> Optional[Any]:
        """cached data or None"""
        path = self._path(kind, params)
        if not path.is_file():
            return None
        try:
            with path.open(encoding='utf-8') as fp:
                entry = json.load(fp)
        except (OSError, ValueError) as e:
            _logger.warning(f"ignoring unreadable cache entry {path.name}: {e}")
            return None
        _logger.debug(f"cache hit {path.name}")
        return entry.get('data')

    def put(self, kind: str, params: dict, data: Any) -> Path:
        """store data unless an entry already exists"""
        path = self._path(kind, params)
        if path.exists():
            return path
        entry = {'kind': kind, 'params': params, 'data': data}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as fp:
                json.dump(entry, fp, indent=1)
            os.replace(tmp, path)
        except OSError:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        _logger.debug(f"cache store {path.name}")
        return path

    def entries(self) -> List[dict]:
        """kind, params and file name of every entry"""
        found = []
        for path in sorted(self.directory.glob('*' + self.SUFFIX)):
            try:
                with path.open(encoding='utf-8') as fp:
                    entry = json.load(fp)
            except (OSError, ValueError):
                continue
            found.append({'file': path.name, 'kind': entry.get('kind'),
                          'params': entry.get('params')})
        return found

    def clear(self) -> int:
        """remove all entries, returns their number"""
        removed = 0
        for path in self.directory.glob('*' + self.SUFFIX):
            path.unlink()
            removed += 1
        return removed


__all__ = ('CoefficientCache', )
