"""
Programmatic entry point of the ``lspectrum`` management command.

``run(argv)`` returns the process exit code instead of exiting: 0 success
or true verdict, 1 false verdict or mismatch, 2 bad input, 3 numerical
failure.
"""
import os
import sys

import django

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def run(argv=None, stdout=None, stderr=None) -> int:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'project_config.settings')
    django.setup()
    from .management.commands.lspectrum import Command

    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        Command(stdout=stdout, stderr=stderr).run_from_argv(['manage.py', 'lspectrum', *argv])
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(run())
