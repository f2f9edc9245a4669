import argparse
import logging
import math

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from lspectrum.cli import EXIT_FALSE, EXIT_INPUT, EXIT_NUMERICAL
from lspectrum.exceptions import InputError, NotCanonical, NumericalFailure
from lspectrum.files import dumps, read_matrix, read_operator
from lspectrum.oracle import OracleConfig, oracle_spectrum, spectra_equal
from lspectrum.preserver import battery_entries, check_preserver, recover_q
from lspectrum.serializers import (
    BatterySerializer,
    ComparisonSerializer,
    OrthoQSerializer,
    SpectrumReportSerializer,
    VerdictSerializer,
)
from lspectrum.smallmat import absmax
from lspectrum.spectrum import full_spectrum

logger = logging.getLogger(__name__)


def positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid float value: {text!r}")
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return value


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def battery_count(text):
    value = positive_int(text)
    if value < 30:
        raise argparse.ArgumentTypeError("a battery needs at least 30 matrices")
    return value


class Command(BaseCommand):
    help = "Lorentz spectra of 3x3 matrices and checks of linear spectrum preservers."
    requires_system_checks = []

    SUBCOMMANDS = {
        'spectrum': ("L-spectrum of the input matrix via the algebraic systems.", 'input'),
        'oracle': ("L-spectrum of the input matrix via the brute-force sweep.", 'input'),
        'compare': ("Solver against oracle; exit 1 when they disagree.", 'input'),
        'preserver-check': ("Test whether an operator preserves L-spectra; exit 1 if not.", 'operator'),
        'recover-q': ("Read the orthogonal Q off a canonical preserver.", 'operator'),
        'battery': ("Print the test battery for a seed.", None),
    }

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)
        for name, (help_text, needs) in self.SUBCOMMANDS.items():
            sub = subparsers.add_parser(name, help=help_text)
            sub.add_argument('--tol', type=positive_float, default=1e-8)
            sub.add_argument('--theta-steps', type=positive_int, default=100000)
            sub.add_argument('--seed', type=int, default=0)
            sub.add_argument('--count', type=battery_count, default=60)
            sub.add_argument('--input', metavar='FILE', required=needs == 'input')
            sub.add_argument('--operator', metavar='FILE', required=needs == 'operator')

    def handle(self, *args, **options):
        handler = getattr(self, 'handle_' + options['subcommand'].replace('-', '_'))
        try:
            data, ok = handler(options)
        except InputError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT)
        except (NumericalFailure, np.linalg.LinAlgError) as exc:
            raise CommandError(f"numerical failure: {exc}", returncode=EXIT_NUMERICAL)
        except CommandError:
            raise
        except Exception as exc:
            logger.exception("unexpected error in %s", options['subcommand'])
            raise CommandError(f"internal error: {exc}", returncode=EXIT_NUMERICAL)

        self.stdout.write(dumps(data))
        if not ok:
            raise CommandError(f"{options['subcommand']}: negative result", returncode=EXIT_FALSE)

    def handle_spectrum(self, options):
        A = read_matrix(options['input'])
        return SpectrumReportSerializer(full_spectrum(A, options['tol'])).data, True

    def handle_oracle(self, options):
        A = read_matrix(options['input'])
        cfg = OracleConfig.from_settings(theta_steps=options['theta_steps'])
        return SpectrumReportSerializer(oracle_spectrum(A, cfg)).data, True

    def handle_compare(self, options):
        A = read_matrix(options['input'])
        cfg = OracleConfig.from_settings(theta_steps=options['theta_steps'])
        solver, oracle = full_spectrum(A, options['tol']), oracle_spectrum(A, cfg)
        # the sweep cannot resolve interval ends finer than its grid
        tol = max(options['tol'], 2.0 * math.pi * max(1.0, absmax(A.entries)) / cfg.theta_steps)
        diff = spectra_equal(solver, oracle, tol)
        data = ComparisonSerializer({
            'solver': solver,
            'oracle': oracle,
            'hausdorff_distance': diff.hausdorff_distance,
            'missing': diff.missing,
            'extra': diff.extra,
            'equal': diff.equal,
        }).data
        return data, diff.equal

    def handle_preserver_check(self, options):
        m = read_operator(options['operator'])
        verdict = check_preserver(m, options['seed'], options['count'], options['tol'])
        return VerdictSerializer(verdict).data, verdict.is_preserver

    def handle_recover_q(self, options):
        m = read_operator(options['operator'])
        try:
            q = recover_q(m, options['tol'])
        except NotCanonical as exc:
            return {'error': 'not-canonical', 'reason': exc.reason}, False
        return OrthoQSerializer(q).data, True

    def handle_battery(self, options):
        entries = battery_entries(options['seed'], options['count'])
        data = BatterySerializer({
            'seed': options['seed'],
            'count': len(entries),
            'entries': [{'label': label, 'matrix': A.tolist()} for label, A in entries],
        }).data
        return data, True
