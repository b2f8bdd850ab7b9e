import tempfile
import unittest
from pathlib import Path

from lhmfperiods.cache import *
from lhmfperiods.exceptions import DataError


class TestCoefficientCache(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.cache = CoefficientCache(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()

    def test_roundtrip(self):
        self.assertIsNone(self.cache.get('eisenstein', {'k': 2, 'order': 3}))
        self.cache.put('eisenstein', {'k': 2, 'order': 3}, ['240', '2160', '6720'])
        self.assertEqual(self.cache.get('eisenstein', {'k': 2, 'order': 3}), ['240', '2160', '6720'])
        self.assertIsNone(self.cache.get('eisenstein', {'k': 2, 'order': 4}))

    def test_write_once(self):
        first = self.cache.put('delta', {'order': 2}, ['1', '-24'])
        self.cache.put('delta', {'order': 2}, ['0', '0'])
        self.assertEqual(self.cache.get('delta', {'order': 2}), ['1', '-24'])
        self.assertEqual(first.name, CoefficientCache.key('delta', {'order': 2}) + '.json')

    def test_entries_and_clear(self):
        self.cache.put('delta', {'order': 2}, ['1', '-24'])
        self.cache.put('petersson', {'weight': 12}, {'value': '1e-6', 'error': '1e-15'})
        kinds = sorted(entry['kind'] for entry in self.cache.entries())
        self.assertEqual(kinds, ['delta', 'petersson'])
        self.assertEqual(self.cache.clear(), 2)
        self.assertEqual(self.cache.entries(), [])

    def test_unreadable_entry(self):
        path = self.cache.put('delta', {'order': 2}, ['1', '-24'])
        path.write_text('{', encoding='utf-8')
        self.assertIsNone(self.cache.get('delta', {'order': 2}))

    def test_bad_directory(self):
        blocker = Path(self._directory.name) / 'file'
        blocker.write_text('', encoding='utf-8')
        with self.assertRaises(DataError):
            CoefficientCache(blocker / 'cache')


if __name__ == '__main__':
    unittest.main()
