import argparse
import csv
import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from fractions import Fraction

import mpmath as mp

from lhmfperiods.__main__ import *
from lhmfperiods.exceptions import SysExit
from lhmfperiods.progress import NoProgressBarBackend, Progress
from lhmfperiods.quadforms import QuadForm


def run(argv):
    stream = io.StringIO()
    with redirect_stdout(stream):
        main(['-q'] + argv)
    return stream.getvalue()


class TestActions(unittest.TestCase):

    def setUp(self):
        self.parser = argparse.ArgumentParser(prog='lhmfperiods')
        add_cli_options(self.parser)

    def test_k_range(self):
        optargs = self.parser.parse_args(['table', '--disc', '-3', '--k', '2..4'])
        self.assertEqual(optargs.k_range, range(2, 5))
        optargs = self.parser.parse_args(['table', '--disc', '-3', '--k', '6'])
        self.assertEqual(optargs.k_range, range(6, 7))
        for value in ('4..2', 'x'):
            with self.subTest(value=value):
                with self.assertRaises(SystemExit):
                    self.parser.parse_args(['table', '--disc', '-3', '--k', value])

    def test_form(self):
        optargs = self.parser.parse_args(['period', '--k', '2', '--n', '1', '--form', '2,2,3'])
        self.assertEqual(optargs.form, QuadForm(2, 2, 3))
        self.assertEqual(optargs.mode, 'both')
        with self.assertRaises(SystemExit):
            self.parser.parse_args(['period', '--k', '2', '--n', '1', '--form', '2,2'])

    def test_coeffs(self):
        optargs = self.parser.parse_args(['combo', '--k', '6', '--form', '1,1,1', '--coeffs', '1:10,3:-24,5:6'])
        self.assertEqual(optargs.coeffs, {1: 10, 3: -24, 5: 6})
        optargs = self.parser.parse_args(['combo', '--k', '6', '--form', '1,1,1', '--coeffs', '1:1/2,1:1/2'])
        self.assertEqual(optargs.coeffs, {1: Fraction(1)})
        with self.assertRaises(SystemExit):
            self.parser.parse_args(['combo', '--k', '6', '--form', '1,1,1', '--coeffs', '1=10'])
        with self.assertRaises(SystemExit):
            self.parser.parse_args(['combo', '--k', '6', '--form', '1,1,1', '--coeffs', '1:1', '--cohen', '2'])

    def test_config(self):
        optargs = self.parser.parse_args(['--precision', '40', '--format', 'csv', 'verify'])
        config = config_from_args(optargs)
        self.assertEqual((config.precision, config.output, config.orbit_bound), (40, 'csv', 1500))


class TestRender(unittest.TestCase):

    def test_csv(self):
        config = Config(output='csv')
        results = class_sum_period(-3, 3, 1, config, 'exact')
        lines = render_results(results, config, 'table').split('\n')
        self.assertEqual(lines[0], f"# config {config.digest()}")
        rows = list(csv.reader(lines[1:]))
        self.assertEqual(rows[0], list(CSV_HEADER))
        self.assertEqual(rows[1][:6], ['3', '1', '[1,1,1]', '-3/2', '-1.50000', '0.00000'])
        self.assertEqual(rows[-1][:4], ['3', '1', 'sum(d=-3)', '-3/2'])

    def test_pretty(self):
        config = Config(decimals=3)
        text = render_results([compute_period(QuadForm(1, 1, 1), 2, 1, config, 'exact')], config, 'period')
        self.assertIn('-2.000', text)
        self.assertIn(config.digest(), text.split('\n')[0])

    def test_format_real(self):
        self.assertEqual(format_real(mp.mpf(-2.0567), Config(decimals=2)), '-2.06')
        self.assertTrue(format_real(mp.pi, Config(full=True, precision=15)).startswith('3.14159265358979'))


class TestCommands(unittest.TestCase):

    def tearDown(self):
        Progress.set_default_backend(NoProgressBarBackend)
        mp.mp.dps = 15

    def test_period_json(self):
        document = json.loads(run(['--format', 'json', 'period', '--k', '3', '--n', '1',
                                   '--form', '1,1,1', '--mode', 'exact']))
        self.assertEqual(document['command'], 'period')
        record = document['results'][0]
        self.assertEqual(record['exact'], {'kind': 'rational', 'value': '-3/2'})
        self.assertEqual(record['digest'], document['digest'])
        self.assertEqual(document['config']['precision'], 30)

    def test_table_exact(self):
        text = run(['--format', 'csv', 'table', '--disc', '-3', '--k', '3', '--mode', 'exact'])
        rows = [row for row in csv.reader(text.splitlines()) if row[0] == '3']
        self.assertEqual(len(rows), 2 * 5)
        self.assertIn(['3', '3', 'sum(d=-3)', '3/2', '1.50000'], [row[:5] for row in rows])

    def test_combo(self):
        document = json.loads(run(['--format', 'json', 'combo', '--k', '6', '--form', '1,1,1',
                                   '--coeffs', '1:10,3:-24,5:6']))
        self.assertEqual(document['exact'], '-108')

    def test_epstein(self):
        document = json.loads(run(['--format', 'json', 'epstein', '--form', '1,1,1', '--s', '3']))
        self.assertEqual(document['value'], document['reference'])

    def test_verify(self):
        document = json.loads(run(['verify', '--suite', 'kz-zero', '--quick', '--json']))
        self.assertTrue(document['passed'])

    def test_cache(self):
        with tempfile.TemporaryDirectory() as directory:
            run(['--cache-dir', directory, '--format', 'json', 'period', '--k', '2', '--n', '0',
                 '--form', '1,1,1', '--mode', 'exact'])
            entries = json.loads(run(['--cache-dir', directory, '--format', 'json', 'cache', '--list']))
            self.assertTrue(entries)
            run(['--cache-dir', directory, 'cache', '--clear'])
            self.assertEqual(run(['--cache-dir', directory, 'cache', '--list']), '')

    def test_exit_codes(self):
        cases = (
            (['period', '--k', '2', '--n', '1', '--form', '1,0,5', '--mode', 'exact'], SysExit.EX_INPUT),
            (['period', '--k', '2', '--n', '5', '--form', '1,1,1'], SysExit.EX_INPUT),
            (['combo', '--k', '6', '--form', '1,1,1', '--coeffs', '1:1'], SysExit.EX_INPUT),
            (['table', '--disc', '-5'], SysExit.EX_INPUT),
            (['cache', '--list'], SysExit.EX_INPUT),
        )
        for argv, code in cases:
            with self.subTest(argv=' '.join(argv)):
                with self.assertRaises(SystemExit) as context:
                    run(argv)
                self.assertEqual(context.exception.code, code)


if __name__ == '__main__':
    unittest.main()
