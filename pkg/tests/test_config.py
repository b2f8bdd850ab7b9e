import unittest

import mpmath as mp

from lhmfperiods.config import *
from lhmfperiods.exceptions import DataError


class TestConfig(unittest.TestCase):

    def tearDown(self):
        mp.mp.dps = 15

    def test_defaults(self):
        self.assertEqual(DEFAULT_CONFIG.precision, 30)
        self.assertEqual(DEFAULT_CONFIG.output, 'pretty')
        self.assertEqual(DEFAULT_CONFIG.to_dict()['orbit_bound'], 1500)

    def test_validation(self):
        for changes in ({'precision': 10}, {'quad_tol': 0}, {'matrix_bound': 0},
                        {'decimals': -1}, {'output': 'xml'}):
            with self.subTest(**changes):
                with self.assertRaises(DataError):
                    DEFAULT_CONFIG.replace(**changes)

    def test_digest(self):
        self.assertEqual(len(DEFAULT_CONFIG.digest()), 12)
        self.assertEqual(DEFAULT_CONFIG.digest(), Config().digest())
        # presentation fields do not change the numbers
        self.assertEqual(DEFAULT_CONFIG.replace(output='json', decimals=8).digest(), DEFAULT_CONFIG.digest())
        self.assertNotEqual(DEFAULT_CONFIG.replace(orbit_bound=200).digest(), DEFAULT_CONFIG.digest())

    def test_apply(self):
        DEFAULT_CONFIG.replace(precision=40).apply()
        self.assertEqual(mp.mp.dps, 40)


if __name__ == '__main__':
    unittest.main()
