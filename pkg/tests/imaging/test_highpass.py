"""
Тесты высокочастотных остатков.
"""
import unittest

import numpy as np

from iapl.errors import ArgumentError
from iapl.imaging import Image, highpass_residual, kernel_bank


def loop_correlate(channel, kernel):
    """Прямая корреляция циклом; центр ядра в size // 2, окна за краем дают 0"""
    h, w = channel.shape
    kh, kw = kernel.shape
    ch, cw = kh // 2, kw // 2
    out = np.zeros((h, w))
    for i in range(h):
        for j in range(w):
            if i - ch < 0 or i - ch + kh > h or j - cw < 0 or j - cw + kw > w:
                continue
            acc = 0.0
            for a in range(kh):
                for b in range(kw):
                    acc += kernel[a, b] * channel[i - ch + a, j - cw + b]
            out[i, j] = acc
    return out


class TestHighpassResidual(unittest.TestCase):
    """Тесты для highpass_residual"""

    def setUp(self):
        self.kernels = kernel_bank("srm3")
        self.k = len(self.kernels)

    def test_layout(self):
        """4 ядра на канал, плоскость c*K + k"""
        stack = highpass_residual(Image(np.zeros((8, 8, 3))))
        self.assertEqual(stack.residuals.shape, (12, 8, 8))
        self.assertEqual(stack.filter_ids, ("first_h", "second_h", "second_v", "kb"))

    def test_constant_patch(self):
        stack = highpass_residual(Image(np.full((16, 16, 3), 0.6)))
        self.assertLess(np.abs(stack.residuals).max(), 1e-12)

    def test_ramp_second_order(self):
        """Вторая разность линейной функции равна нулю во внутренней области"""
        ramp = np.tile(np.linspace(0.0, 1.0, 16)[None, :, None], (16, 1, 3))
        stack = highpass_residual(Image(ramp))
        second_h = self.kernels.index(next(k for k in self.kernels if k.name == "second_h"))
        for c in range(3):
            plane = stack.residuals[c * self.k + second_h]
            self.assertLess(np.abs(plane[:, 1:-1]).max(), 1e-12)

    def test_impulse_matches_loop(self):
        data = np.zeros((9, 9, 3))
        data[4, 4, 1] = 1.0
        stack = highpass_residual(Image(data))
        for k, kernel in enumerate(self.kernels):
            expected = loop_correlate(data[:, :, 1], kernel.normalized)
            self.assertTrue(np.allclose(stack.residuals[self.k + k], expected, atol=1e-15))
            # вокруг импульса виден перевернутый образ ядра
            kh, kw = kernel.weights.shape
            ch, cw = kh // 2, kw // 2
            flipped = kernel.normalized[::-1, ::-1]
            window = stack.residuals[self.k + k][4 - (kh - 1 - ch):4 + ch + 1,
                                                 4 - (kw - 1 - cw):4 + cw + 1]
            self.assertTrue(np.allclose(window, flipped, atol=1e-15))

    def test_random_matches_loop(self):
        data = np.random.default_rng(8).random((7, 10, 3))
        stack = highpass_residual(Image(data))
        for c in range(3):
            for k, kernel in enumerate(self.kernels):
                expected = loop_correlate(data[:, :, c], kernel.normalized)
                self.assertTrue(np.allclose(stack.residuals[c * self.k + k], expected, atol=1e-12))

    def test_linearity(self):
        rng = np.random.default_rng(9)
        x = rng.random((12, 12, 3))
        y = rng.random((12, 12, 3))
        a, b = 0.3, 0.6
        lhs = highpass_residual(Image(a * x + b * y)).residuals
        rhs = a * highpass_residual(Image(x)).residuals + b * highpass_residual(Image(y)).residuals
        self.assertLess(np.abs(lhs - rhs).max(), 1e-9)

    def test_unknown_filter_set(self):
        with self.assertRaises(ArgumentError):
            kernel_bank("srm30")


if __name__ == '__main__':
    unittest.main()
