"""
lhmfperiods
periods of the cusp forms f_{k,P} and locally harmonic Maass forms
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

import argparse
import csv
import io
import json
from fractions import Fraction
from typing import Dict, List, Optional

import mpmath as mp

from lhmfperiods import __version__
from lhmfperiods.cache import CoefficientCache
from lhmfperiods.config import OUTPUT_FORMATS, Config
from lhmfperiods.exceptions import DataError, UsageError, VerificationError, except_and_safe_exit
from lhmfperiods.logger import logger, set_verbose
from lhmfperiods.periods import (BOTH, CHOWLA_SELBERG, EXACT, MODES, NUMERIC, SHELLS, PeriodResult,
                                 class_sum_period, cohen_relation, compute_period, epstein_class_number_one,
                                 epstein_zeta, linear_combination_period)
from lhmfperiods.progress import NoProgressBarBackend, Progress, find_backend
from lhmfperiods.quadforms import QuadForm, enumerate_classes
from lhmfperiods.verify import SUITES, run_suites

VERSION = (f"lhmfperiods v{__version__}\n\n"
           f"2023 Yaroshenko Dmytro (https://github.com/o-murphy)\n")

CSV_HEADER = ('k', 'n', 'form', 'exact', 'numeric_re', 'numeric_im', 'err')

_logger = logger.getChild('cli')


class ActionKRange(argparse.Action):
    """Action to parse a weight range K or K1..K2"""

    def __call__(self, parser, namespace, values, option_string=None):
        try:
            if '..' in values:
                first, last = (int(part) for part in values.split('..'))
            else:
                first = last = int(values)
        except ValueError:
            parser.error(f"{option_string} has to be K or K1..K2, wrong argument value '{values}'")
        if first > last:
            parser.error(f"{option_string}: empty range '{values}'")
        setattr(namespace, self.dest, range(first, last + 1))


class ActionForm(argparse.Action):
    """Action to parse a binary quadratic form a,b,c"""

    def __call__(self, parser, namespace, values, option_string=None):
        try:
            setattr(namespace, self.dest, QuadForm.parse(values))
        except DataError as e:
            parser.error(f"{option_string}: {e}")


class ActionCoeffs(argparse.Action):
    """Action to parse n:a,n:a,... coefficient lists"""

    def __call__(self, parser, namespace, values, option_string=None):
        coeffs: Dict[int, Fraction] = {}
        try:
            for item in values.split(','):
                n, a = item.split(':')
                coeffs[int(n)] = coeffs.get(int(n), Fraction(0)) + Fraction(a)
        except ValueError:
            parser.error(f"{option_string} has to be in n:a[,n:a...] format, "
                         f"wrong argument value '{values}'")
        setattr(namespace, self.dest, coeffs)


options = (
    {
        'args': ('-V', '--version'),
        'action': 'version', 'version': VERSION,
        'help': "Print the version number"
    },
    {
        'args': ('-v', '--verbose'),
        'action': 'store_true',
        'help': "Print verbose debug statements",
    },
    {
        'args': ('-q', '--quiet'),
        'action': 'store_true',
        'help': "Do not draw progress bars",
    },
    {
        'args': ('--format',),
        'choices': OUTPUT_FORMATS, 'dest': 'output',
        'help': "Output format (default: pretty)",
    },
    {
        'args': ('--full',),
        'action': 'store_true',
        'help': "Print numbers at the working precision instead of --decimals places",
    },
    {
        'args': ('--decimals',),
        'type': int, 'metavar': '<places>',
        'help': "Decimal places of printed numbers (default: 5)",
    },
    {
        'args': ('--precision',),
        'type': int, 'metavar': '<digits>',
        'help': "Working precision in decimal digits (default: 30)",
    },
    {
        'args': ('--quad-tol',),
        'type': float, 'metavar': '<tol>',
        'help': "Target error of the period quadrature (default: 1e-12)",
    },
    {
        'args': ('--matrix-bound',),
        'type': int, 'metavar': '<B>',
        'help': "Shell bound of matrix sums over Gamma (default: 400)",
    },
    {
        'args': ('--series-terms',),
        'type': int, 'metavar': '<N>',
        'help': "Truncation order of q-expansions (default: 60)",
    },
    {
        'args': ('--orbit-bound',),
        'type': int, 'metavar': '<A>',
        'help': "Minimal leading coefficient bound of the orbit sums in f_{k,P}, raised per weight "
                "until the orbit tail is below 1e-8, at most to 10000 (default: 1500)",
    },
    {
        'args': ('--pole-guard',),
        'type': float, 'metavar': '<dist>',
        'help': "Minimal distance of evaluation points to poles (default: 1e-3)",
    },
    {
        'args': ('--cache-dir',),
        'metavar': '<path>',
        'help': "Directory of the coefficient cache (default: no cache)",
    },
)

table_options = (
    {
        'args': ('--k',),
        'action': ActionKRange, 'dest': 'k_range', 'default': range(2, 8),
        'metavar': '<K1..K2>',
        'help': "Weight range (default: 2..7)",
    },
    {
        'args': ('--disc',),
        'type': int, 'required': True, 'metavar': '<d>',
        'help': "Negative discriminant of the forms P",
    },
    {
        'args': ('--mode',),
        'choices': MODES, 'default': NUMERIC,
        'help': "Evaluation path (default: numeric)",
    },
    {
        'args': ('--skip-inadmissible',),
        'action': 'store_true',
        'help': "Skip classes whose CM point lies on the exceptional set instead of failing",
    },
)

period_options = (
    {
        'args': ('--k',),
        'type': int, 'required': True, 'metavar': '<k>',
        'help': "Weight parameter, f_{k,P} has weight 2k",
    },
    {
        'args': ('--n',),
        'type': int, 'required': True, 'metavar': '<n>',
        'help': "Period index 0 <= n <= 2k-2",
    },
    {
        'args': ('--form',),
        'action': ActionForm, 'required': True, 'metavar': '<a,b,c>',
        'help': "Positive definite form P",
    },
    {
        'args': ('--mode',),
        'choices': MODES, 'default': BOTH,
        'help': "Evaluation path (default: both)",
    },
)

combo_options = (
    {
        'args': ('--k',),
        'type': int, 'required': True, 'metavar': '<k>',
        'help': "Weight parameter, f_{k,P} has weight 2k",
    },
    {
        'args': ('--form',),
        'action': ActionForm, 'required': True, 'metavar': '<a,b,c>',
        'help': "Positive definite form P",
    },
    {
        'args': ('--mode',),
        'choices': (EXACT, BOTH), 'default': EXACT,
        'help': "Add the numeric combination of quadrature periods with 'both'",
    },
)

combo_group_options = (
    {
        'args': ('--coeffs',),
        'action': ActionCoeffs, 'metavar': '<n:a,...>',
        'help': "Coefficients a_n of sum a_n r_n, sum a_n R_n has to vanish",
    },
    {
        'args': ('--cohen',),
        'type': int, 'metavar': '<j>',
        'help': "Use the Cohen relation with index j",
    },
)

epstein_options = (
    {
        'args': ('--form',),
        'action': ActionForm, 'required': True, 'metavar': '<a,b,c>',
        'help': "Positive definite form Q",
    },
    {
        'args': ('--s',),
        'type': int, 'required': True, 'metavar': '<s>',
        'help': "Integer argument s >= 2",
    },
    {
        'args': ('--method',),
        'choices': (CHOWLA_SELBERG, SHELLS), 'default': CHOWLA_SELBERG,
        'help': "Bessel expansion or square shells (default: chowla-selberg)",
    },
    {
        'args': ('--radius',),
        'type': int, 'default': 300, 'metavar': '<r>',
        'help': "Shell radius of the shells method (default: 300)",
    },
)

verify_options = (
    {
        'args': ('--suite',),
        'choices': SUITES + ('all',), 'default': 'all',
        'help': "Suite to run (default: all)",
    },
    {
        'args': ('--json',),
        'action': 'store_true',
        'help': "Print the machine readable report",
    },
    {
        'args': ('--quick',),
        'action': 'store_true',
        'help': "Reduced weight ranges and truncation bounds",
    },
)

cache_options = (
    {
        'args': ('--list',),
        'action': 'store_true',
        'help': "List the cache entries",
    },
    {
        'args': ('--clear',),
        'action': 'store_true',
        'help': "Remove all cache entries",
    },
)


def _add_options(parser, opts) -> None:
    for opt in opts:
        opt = dict(opt)
        args = opt.pop('args')
        parser.add_argument(*args, **opt)


def add_cli_options(parser: argparse.ArgumentParser) -> None:
    """Add cli options and subcommands"""
    _add_options(parser, options)
    commands = parser.add_subparsers(dest='command', metavar='<command>')
    commands.required = True

    table_parser = commands.add_parser('table', help="Period table of the class sum f_{k,d}")
    _add_options(table_parser, table_options)

    period_parser = commands.add_parser('period', help="One period r_n(f_{k,P})")
    _add_options(period_parser, period_options)

    combo_parser = commands.add_parser('combo', help="Rational combination of periods with sum a_n R_n = 0")
    _add_options(combo_parser, combo_options)
    _add_options(combo_parser.add_mutually_exclusive_group(required=True), combo_group_options)

    epstein_parser = commands.add_parser('epstein', help="Epstein zeta function of a form")
    _add_options(epstein_parser, epstein_options)

    verify_parser = commands.add_parser('verify', help="Run verification suites")
    _add_options(verify_parser, verify_options)

    cache_parser = commands.add_parser('cache', help="Inspect the coefficient cache")
    _add_options(cache_parser.add_mutually_exclusive_group(required=True), cache_options)


def config_from_args(optargs: argparse.Namespace) -> Config:
    """Config from the common numeric flags, unset flags keep the defaults"""
    fields = ('precision', 'quad_tol', 'matrix_bound', 'series_terms', 'orbit_bound',
              'pole_guard', 'decimals', 'full', 'output', 'cache_dir')
    changes = {name: getattr(optargs, name) for name in fields if getattr(optargs, name, None) is not None}
    return Config(**changes)


def format_real(value, config: Config) -> str:
    if config.full:
        return mp.nstr(value, config.precision)
    return f"{float(value):.{config.decimals}f}"


def format_exact(value) -> str:
    if value is None:
        return ''
    if value.is_rational():
        return str(value.as_fraction())
    return str(value)


def result_row(result: PeriodResult, config: Config) -> List[str]:
    """CSV cells of one period"""
    value = result.value()
    error = result.numeric.error if result.numeric is not None else 0
    return [str(result.k), str(result.n), result.name, format_exact(result.exact),
            format_real(value.real, config), format_real(value.imag, config), mp.nstr(mp.mpf(error), 3)]


def render_results(results: List[PeriodResult], config: Config, command: str) -> str:
    """results in the configured output format"""
    digest = config.digest()
    if config.output == 'json':
        records = []
        for result in results:
            record = result.to_dict()
            record['digest'] = digest
            records.append(record)
        document = {'tool': 'lhmfperiods', 'version': __version__, 'command': command,
                    'config': config.to_dict(), 'digest': digest, 'results': records}
        return json.dumps(document, indent=2, sort_keys=True)
    rows = [result_row(result, config) for result in results]
    if config.output == 'csv':
        buffer = io.StringIO()
        buffer.write(f"# config {digest}\n")
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
        return buffer.getvalue().rstrip('\n')
    widths = [max(len(cells[i]) for cells in rows + [list(CSV_HEADER)]) for i in range(len(CSV_HEADER))]
    lines = [f"{command}  config {digest}",
             "  ".join(title.rjust(width) for title, width in zip(CSV_HEADER, widths))]
    lines.extend("  ".join(cell.rjust(width) for cell, width in zip(cells, widths)) for cells in rows)
    return "\n".join(lines)


def _cache(config: Config) -> Optional[CoefficientCache]:
    if config.cache_dir is None:
        return None
    return CoefficientCache(config.cache_dir)


def table(optargs, config: Config) -> str:
    """cmd_table: per-class and summed periods for every (k, n) cell"""
    classes = enumerate_classes(optargs.disc)
    _logger.info(f"d={optargs.disc}: {len(classes)} classes {', '.join(map(str, classes))}")
    cache = _cache(config)
    cells = [(k, n) for k in optargs.k_range for n in range(2 * k - 1)]
    results = []
    with Progress(description=f"table d={optargs.disc}", total=len(cells)) as bar:
        for k, n in cells:
            _logger.debug(f"cell k={k} n={n}")
            results.extend(class_sum_period(optargs.disc, k, n, config, optargs.mode,
                                            optargs.skip_inadmissible, cache))
            bar.update(advance=1)
    mismatches = [result for result in results if 'mismatch' in result.method]
    if mismatches:
        _logger.warning(f"{len(mismatches)} cells with exact and numeric values apart: "
                        f"{', '.join(f'r_{r.n}(f_({r.k},{r.name}))' for r in mismatches)}")
    return render_results(results, config, 'table')


def period(optargs, config: Config) -> str:
    """cmd_period"""
    result = compute_period(optargs.form, optargs.k, optargs.n, config, optargs.mode, _cache(config))
    return render_results([result], config, 'period')


def combo(optargs, config: Config) -> str:
    """cmd_combo: kernel check first, then the exact combination"""
    k, form = optargs.k, optargs.form
    coeffs = optargs.coeffs if optargs.coeffs is not None else cohen_relation(k, optargs.cohen)
    value = linear_combination_period(form, k, coeffs)
    record = {
        'k': k,
        'form': form.as_list(),
        'coeffs': {str(n): str(Fraction(a)) for n, a in sorted(coeffs.items())},
        'exact': format_exact(value),
        'digest': config.digest(),
    }
    if optargs.mode == BOTH:
        cache = _cache(config)
        total = mp.mpc(0)
        error = mp.mpf(0)
        for n, a in sorted(coeffs.items()):
            result = compute_period(form, k, n, config, NUMERIC, cache)
            total += mp.mpf(Fraction(a).numerator) / Fraction(a).denominator * result.numeric.value
            error += abs(Fraction(a)) * result.numeric.error
        record['numeric'] = {'re': format_real(total.real, config), 'im': format_real(total.imag, config),
                             'err': mp.nstr(error, 3)}
        gap = abs(total - value.to_mpc())
        if gap > error + mp.mpf(10) ** -3:
            _logger.warning(f"numeric combination {mp.nstr(total, 8)} differs from {value} by {mp.nstr(gap, 3)}")
    return _render_record(record, config, 'combo')


def epstein(optargs, config: Config) -> str:
    """cmd_epstein, compared with zeta(s) L(chi_d, s) for class number one"""
    form = optargs.form.require_positive_definite()
    value = epstein_zeta(form, optargs.s, optargs.method, optargs.radius)
    record = {
        'form': form.as_list(),
        's': optargs.s,
        'method': optargs.method,
        'value': format_real(value.value.real, config),
        'err': mp.nstr(value.error, 3),
        'digest': config.digest(),
    }
    reference = epstein_class_number_one(form.disc, optargs.s)
    if reference is not None:
        record['reference'] = format_real(reference, config)
        record['difference'] = mp.nstr(abs(value.value.real - reference), 3)
    return _render_record(record, config, 'epstein')


def _render_record(record: dict, config: Config, command: str) -> str:
    if config.output == 'json':
        return json.dumps({'tool': 'lhmfperiods', 'version': __version__, 'command': command,
                           'config': config.to_dict(), **record}, indent=2, sort_keys=True)
    if config.output == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(record.keys())
        writer.writerow(json.dumps(v) if isinstance(v, (dict, list)) else v for v in record.values())
        return buffer.getvalue().rstrip('\n')
    return "\n".join(f"{key:>10}: {value}" for key, value in record.items())


def verify(optargs, config: Config) -> str:
    """cmd_verify, VerificationError on any failed check"""
    reports = run_suites(optargs.suite, config, _cache(config), optargs.quick,
                         backend=NoProgressBarBackend if optargs.quiet else find_backend())
    failures = [check for report in reports for check in report.failures]
    if optargs.json or config.output == 'json':
        text = json.dumps({'tool': 'lhmfperiods', 'version': __version__, 'digest': config.digest(),
                           'passed': not failures, 'suites': [report.to_dict() for report in reports]},
                          indent=2, sort_keys=True)
    else:
        lines = []
        for report in reports:
            lines.append(f"{report.suite}: {'ok' if report.passed else 'FAILED'} "
                         f"({len(report.checks) - len(report.failures)}/{len(report.checks)})")
            lines.extend(f"  {check.name}: expected {check.expected}, observed {check.observed}"
                         for check in report.failures)
        text = "\n".join(lines)
    if failures:
        print(text)
        raise VerificationError(f"{len(failures)} checks failed")
    return text


def cache(optargs, config: Config) -> str:
    """cmd_cache"""
    store = _cache(config)
    if store is None:
        raise UsageError("the cache command needs --cache-dir")
    if optargs.clear:
        removed = store.clear()
        _logger.info(f"removed {removed} cache entries from {store.directory}")
        return ''
    entries = store.entries()
    if config.output == 'json':
        return json.dumps(entries, indent=2, sort_keys=True)
    return "\n".join(f"{entry['file']}  {entry['kind']}  {json.dumps(entry['params'], sort_keys=True)}"
                     for entry in entries)


COMMANDS = {
    'table': table,
    'period': period,
    'combo': combo,
    'epstein': epstein,
    'verify': verify,
    'cache': cache,
}


@except_and_safe_exit(logger)
def main(argv: Optional[List[str]] = None):
    """Cli entry point"""

    # Create argument parser
    parser = argparse.ArgumentParser(
        prog="lhmfperiods",
        description="Periods of the cusp forms f_{k,P} and locally harmonic Maass forms",
        formatter_class=argparse.RawTextHelpFormatter
    )
    parser.set_defaults(
        verbose=False,
        quiet=False,
        output=None,
        full=None,
    )
    add_cli_options(parser)

    # parse options
    optargs = parser.parse_args(argv)

    if optargs.verbose:
        set_verbose()
    if optargs.quiet:
        Progress.set_default_backend(NoProgressBarBackend)
    config = config_from_args(optargs).apply()
    _logger.debug(f"config {config.digest()} {config.to_dict()}")

    text = COMMANDS[optargs.command](optargs, config)
    if text:
        print(text)


if __name__ == '__main__':
    main()
