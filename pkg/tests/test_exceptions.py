import logging
import unittest

from lhmfperiods.exceptions import *

_logger = logging.getLogger('lhmfperiods.tests')
_logger.addHandler(logging.NullHandler())
_logger.propagate = False


@except_and_safe_exit(_logger)
def failing(error):
    raise error


class TestExitCodes(unittest.TestCase):

    def test_codes(self):
        cases = (
            (DataError("bad form"), SysExit.EX_INPUT),
            (ExceptionalSetError("on the set"), SysExit.EX_INPUT),
            (KernelError("not in kernel", residual=1), SysExit.EX_INPUT),
            (UsageError("no cache"), SysExit.EX_INPUT),
            (UnsupportedError("k too large"), SysExit.EX_INPUT),
            (VerificationError("2 checks failed"), SysExit.EX_FAILURE),
            (SoftwareError("impossible"), SysExit.EX_SOFTWARE),
            (RuntimeError("unexpected"), SysExit.EX_FAILURE),
        )
        for error, code in cases:
            with self.subTest(error=type(error).__name__):
                with self.assertRaises(SystemExit) as context:
                    failing(error)
                self.assertEqual(context.exception.code, code)

    def test_override(self):
        self.assertEqual(Errx("x", exit_code=SysExit.EX_SOFTWARE).exit_code, SysExit.EX_SOFTWARE)

    def test_hierarchy(self):
        self.assertTrue(issubclass(PoleProximityError, ValueError))
        error = PoleProximityError("near", pole=1j)
        self.assertEqual(error.pole, 1j)
        self.assertIsNone(error.form)

    def test_passthrough(self):
        @except_and_safe_exit(_logger)
        def answer():
            return 42

        self.assertEqual(answer(), 42)


if __name__ == '__main__':
    unittest.main()
