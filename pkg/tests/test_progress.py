import io
import unittest
from contextlib import redirect_stderr

from lhmfperiods.progress import *

unittest.TestLoader.sortTestMethodsUsing = None


class TestTableProgress(unittest.TestCase):

    def _loop(self, backend=None, total=None):
        name = backend.__name__ if backend else "Any"
        with Progress(backend, description=name, total=total) as prog:
            for _ in range(10):
                prog.update(advance=1)
            prog.update(description=f"{name} OK")

    @unittest.skipIf(not TQDM_PROGRESS, "tqdm not installed")
    def test_tqdm(self):
        self._loop(TqdmBackend, 10)

        with self.subTest("indeterminate"):
            self._loop(TqdmBackend, None)

    @unittest.skipIf(not RICH_PROGRESS, "rich not installed")
    def test_rich(self):
        self._loop(RichBackend, 10)

        with self.subTest("indeterminate"):
            self._loop(RichBackend, None)

    def test_no_progress(self):
        self._loop(NoProgressBarBackend)

    def test_ascii(self):
        with self.subTest("by advance"):
            stream = io.StringIO()
            with redirect_stderr(stream):
                self._loop(AsciiBackend, 10)
            self.assertEqual(stream.getvalue(), f"AsciiBackend [{'#' * 10}] 10 cells\n")

        with self.subTest("indeterminate"):
            stream = io.StringIO()
            with redirect_stderr(stream):
                self._loop(AsciiBackend, None)
            self.assertTrue(stream.getvalue().endswith("] 10 cells\n"))

    def test_ascii_failure(self):
        stream = io.StringIO()
        with redirect_stderr(stream):
            with self.assertRaises(ArithmeticError):
                with Progress(AsciiBackend, description='cells', total=5, unit='checks') as prog:
                    prog.update(advance=2)
                    raise ArithmeticError("cell failed")
        self.assertTrue(stream.getvalue().endswith("] failed after 2 checks\n"))

    def test_abstract(self):
        with self.assertRaises(TypeError):
            with Progress(AbstractProgressBackend):
                pass

    def test_default_backend(self):
        with self.assertRaises(TypeError):
            Progress.set_default_backend(object)
        Progress.set_default_backend(NoProgressBarBackend)
        self._loop(None, 10)
        Progress.set_default_backend(find_backend())


if __name__ == "__main__":
    unittest.main()
