import json
import os
import tempfile
from io import StringIO

import numpy as np
from django.test import SimpleTestCase

from lspectrum.cli import EXIT_FALSE, EXIT_INPUT, EXIT_OK, run
from lspectrum.preserver import BASIS, LinearMap3, make_preserver
from lspectrum.serializers import SpectrumReportSerializer


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, content):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(content if isinstance(content, str) else json.dumps(content))
        return path

    def matrix_file(self, matrix):
        return self.write('matrix.json', {'matrix': np.asarray(matrix, dtype=float).tolist()})

    def operator_file(self, m, basis=BASIS):
        return self.write('operator.json', {'operator': m.matrix.tolist(), 'basis': basis})

    def call(self, *argv):
        stdout, stderr = StringIO(), StringIO()
        code = run(argv, stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def call_json(self, *argv):
        code, out, _ = self.call(*argv)
        return code, json.loads(out)


class SpectrumCommandTests(CommandTestCase):
    def test_identity(self):
        code, report = self.call_json('spectrum', '--input', self.matrix_file(np.eye(3)))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report, {
            'points': [{'value': 1.0, 'interior': True, 'boundary': True}],
            'intervals': [],
            'infinite': False,
        })

    def test_nilpotent_matrix_reports_an_interval(self):
        code, report = self.call_json('spectrum', '--input', self.matrix_file([[0, 0, 0], [0, 0, 0], [1, 0, 0]]))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['infinite'])
        self.assertEqual(report['intervals'], [{'lo': 0.0, 'hi': 0.5}])
        (point,) = report['points']
        self.assertAlmostEqual(point['value'], 0.0, places=12)
        self.assertTrue(point['interior'] and point['boundary'])

    def test_report_validates_against_its_serializer(self):
        rng = np.random.default_rng(137)
        for _ in range(10):
            _, report = self.call_json('spectrum', '--input', self.matrix_file(rng.uniform(-2, 2, (3, 3))))
            serializer = SpectrumReportSerializer(data=report)
            self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_report_round_trips_through_its_serializer(self):
        rng = np.random.default_rng(139)
        matrices = [rng.uniform(-2, 2, (3, 3)) for _ in range(20)]
        matrices.append([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        for matrix in matrices:
            _, report = self.call_json('spectrum', '--input', self.matrix_file(matrix))
            parsed = SpectrumReportSerializer(data=report)
            self.assertTrue(parsed.is_valid(), parsed.errors)
            self.assertEqual(SpectrumReportSerializer(parsed.validated_data).data, report)

    def test_oracle_and_compare(self):
        path = self.matrix_file([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        code, report = self.call_json('oracle', '--input', path, '--theta-steps', '4000')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['infinite'])
        code, report = self.call_json('compare', '--input', path, '--theta-steps', '4000')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['equal'])
        self.assertEqual(report['missing'], [])
        self.assertEqual(report['extra'], [])


class InputErrorTests(CommandTestCase):
    def assertInputError(self, *argv):
        code, out, _ = self.call(*argv)
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(out, '')

    def test_bad_json(self):
        self.assertInputError('spectrum', '--input', self.write('bad.json', '{"matrix": [[1, 0'))

    def test_non_finite_entries(self):
        self.assertInputError('spectrum', '--input', self.write('nan.json', '{"matrix": [[NaN,0,0],[0,1,0],[0,0,1]]}'))
        self.assertInputError('spectrum', '--input', self.write('inf.json', '{"matrix": [[1e999,0,0],[0,1,0],[0,0,1]]}'))

    def test_wrong_shape(self):
        self.assertInputError('spectrum', '--input', self.matrix_file(np.eye(2)))
        self.assertInputError('spectrum', '--input', self.write('rows.json', {'matrix': [[1, 0, 0], [0, 1], [0, 0, 1]]}))

    def test_missing_file(self):
        self.assertInputError('spectrum', '--input', os.path.join(self.tmp.name, 'absent.json'))

    def test_unknown_basis(self):
        self.assertInputError('recover-q', '--operator', self.operator_file(LinearMap3.identity(), basis='rowmajor'))

    def test_bad_flags(self):
        path = self.matrix_file(np.eye(3))
        self.assertInputError('spectrum', '--input', path, '--bogus')
        self.assertInputError('spectrum', '--input', path, '--tol', '-1')
        self.assertInputError('battery', '--count', '10')
        self.assertInputError('spectrum')
        self.assertInputError('frobnicate')


class PreserverCommandTests(CommandTestCase):
    def test_transpose_is_rejected_on_e31(self):
        code, verdict = self.call_json('preserver-check', '--operator', self.operator_file(LinearMap3.transpose()), '--count', '30')
        self.assertEqual(code, EXIT_FALSE)
        self.assertFalse(verdict['is_preserver'])
        self.assertEqual(verdict['witness_label'], 'E31')
        self.assertEqual(verdict['witness'], [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        self.assertEqual(verdict['spectra']['input']['intervals'], [{'lo': 0.0, 'hi': 0.5}])
        (point,) = verdict['spectra']['image']['points']
        self.assertAlmostEqual(point['value'], -0.5, places=12)
        self.assertIsNone(verdict['q_recovered'])

    def test_canonical_map_is_accepted(self):
        q = [[0.6, -0.8], [0.8, 0.6]]
        code, verdict = self.call_json('preserver-check', '--operator', self.operator_file(make_preserver(q)), '--count', '30')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(verdict['is_preserver'])
        np.testing.assert_allclose(verdict['q_recovered'], q, atol=1e-12)

    def test_recover_q(self):
        q = [[0.0, 1.0], [1.0, 0.0]]
        code, data = self.call_json('recover-q', '--operator', self.operator_file(make_preserver(q)))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data, {'q': q})

    def test_recover_q_not_canonical(self):
        code, data = self.call_json('recover-q', '--operator', self.operator_file(LinearMap3.transpose()))
        self.assertEqual(code, EXIT_FALSE)
        self.assertEqual(data['error'], 'not-canonical')
        self.assertIn('E31', data['reason'])


class BatteryCommandTests(CommandTestCase):
    def test_deterministic_output(self):
        first = self.call('battery', '--seed', '3', '--count', '30')
        second = self.call('battery', '--seed', '3', '--count', '30')
        self.assertEqual(first[0], EXIT_OK)
        self.assertEqual(first[1], second[1])
        data = json.loads(first[1])
        self.assertEqual((data['seed'], data['count'], len(data['entries'])), (3, 30, 30))
        self.assertEqual(data['entries'][0], {'label': 'identity', 'matrix': np.eye(3).tolist()})
