"""
Тесты разбиения на патчи, ДКП и выбора самого насыщенного патча.
"""
import unittest

import numpy as np

from iapl.errors import ArgumentError
from iapl.imaging import (Image, PatchGrid, dct2, dct_richness, idct2,
                          partition_patches, select_richest_patch)
from iapl.imaging.patches import high_band_mask


def dct_matrix(n):
    """Матрица ортонормированного ДКП-II по определению"""
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * (2 * i + 1) * k / (2 * n))
    c[0] /= np.sqrt(2.0)
    return c


def brute_richness(patch):
    gray = 0.299 * patch.data[:, :, 0] + 0.587 * patch.data[:, :, 1] + 0.114 * patch.data[:, :, 2]
    c = dct_matrix(gray.shape[0])
    coeffs = c @ gray @ c.T
    total = 0.0
    n = gray.shape[0]
    for u in range(n):
        for v in range(n):
            if u + v >= n / 4:
                total += abs(coeffs[u, v])
    return total


class TestPartitionPatches(unittest.TestCase):
    """Тесты для partition_patches"""

    def test_exact_tiling(self):
        grid = partition_patches(Image(np.zeros((64, 64, 3))), 32)
        self.assertEqual(len(grid), 4)
        self.assertEqual(grid.positions, [(0, 0), (0, 1), (1, 0), (1, 1)])
        self.assertEqual((grid.rows, grid.cols), (2, 2))

    def test_remainder_discarded(self):
        """Остаток 70 - 64 отбрасывается"""
        grid = partition_patches(Image(np.zeros((70, 70, 3))), 32)
        self.assertEqual(len(grid), 4)
        for p in grid.patches:
            self.assertEqual(p.shape, (32, 32, 3))

    def test_count_large(self):
        """448x448 с патчем 32 дает 196 патчей"""
        grid = partition_patches(Image(np.zeros((448, 448, 3))), 32)
        expected = 0
        for r in range(0, 448 - 31, 32):
            for c in range(0, 448 - 31, 32):
                expected += 1
        self.assertEqual(len(grid), expected)
        self.assertEqual(len(grid), 196)

    def test_patch_content(self):
        data = np.random.default_rng(0).random((16, 24, 3))
        grid = partition_patches(Image(data), 8)
        for patch, (r, c) in zip(grid.patches, grid.positions):
            self.assertTrue(np.array_equal(patch.data, data[r * 8:(r + 1) * 8, c * 8:(c + 1) * 8]))

    def test_too_small(self):
        with self.assertRaises(ArgumentError):
            partition_patches(Image(np.zeros((16, 40, 3))), 32)


class TestDct2(unittest.TestCase):
    """Тесты для dct2"""

    def setUp(self):
        self.rng = np.random.default_rng(11)

    def test_constant(self):
        """Константа c со стороной n: DC = c*n, остальное 0"""
        coeffs = dct2(np.full((8, 8), 0.25))
        self.assertAlmostEqual(coeffs[0, 0], 0.25 * 8, places=12)
        ac = coeffs.copy()
        ac[0, 0] = 0.0
        self.assertLess(np.abs(ac).max(), 1e-12)

    def test_parseval(self):
        x = self.rng.random((16, 16))
        energy = np.sum(x ** 2)
        self.assertLess(abs(np.sum(dct2(x) ** 2) - energy) / energy, 1e-9)

    def test_two_by_two(self):
        coeffs = dct2(np.array([[1.0, 0.0], [0.0, 0.0]]))
        self.assertTrue(np.allclose(coeffs, 0.5, atol=1e-12))

    def test_matches_definition(self):
        x = self.rng.random((6, 6))
        c = dct_matrix(6)
        self.assertTrue(np.allclose(dct2(x), c @ x @ c.T, atol=1e-12))

    def test_inverse(self):
        x = self.rng.random((12, 12))
        self.assertLess(np.abs(idct2(dct2(x)) - x).max(), 1e-9)

    def test_not_square(self):
        with self.assertRaises(ArgumentError):
            dct2(np.zeros((3, 4)))


class TestDctRichness(unittest.TestCase):
    """Тесты для dct_richness"""

    def test_constant_patch(self):
        self.assertAlmostEqual(dct_richness(Image(np.full((32, 32, 3), 0.7))), 0.0, places=10)

    def test_checkerboard_beats_gradient(self):
        """Шахматка в 1 пиксель богаче плавного градиента"""
        idx = np.add.outer(np.arange(16), np.arange(16))
        checker = np.repeat((idx % 2).astype(float)[:, :, None], 3, axis=2)
        ramp = np.repeat((idx / idx.max())[:, :, None], 3, axis=2)
        a, b = Image(checker), Image(ramp)
        self.assertGreaterEqual(brute_richness(a), brute_richness(b))
        self.assertGreaterEqual(dct_richness(a), dct_richness(b))

    def test_offset_invariance(self):
        data = 0.1 + 0.5 * np.random.default_rng(2).random((16, 16, 3))
        base = dct_richness(Image(data))
        shifted = dct_richness(Image(data + 0.3))
        self.assertAlmostEqual(base, shifted, places=9)

    def test_matches_brute_force(self):
        patch = Image(np.random.default_rng(3).random((8, 8, 3)))
        self.assertAlmostEqual(dct_richness(patch), brute_richness(patch), places=9)

    def test_band_excludes_dc(self):
        mask = high_band_mask(32)
        self.assertFalse(mask[0, 0])
        self.assertFalse(mask[3, 4])
        self.assertTrue(mask[4, 4])


class TestSelectRichestPatch(unittest.TestCase):
    """Тесты для select_richest_patch"""

    def test_unique_textured(self):
        data = np.full((64, 64, 3), 0.5)
        data[0:32, 32:64] = np.random.default_rng(4).random((32, 32, 3))
        patch, position = select_richest_patch(partition_patches(Image(data), 32))
        self.assertEqual(position, (0, 1))
        self.assertTrue(np.array_equal(patch.data, data[0:32, 32:64]))

    def test_tie_takes_first(self):
        grid = partition_patches(Image(np.full((24, 24, 3), 0.2)), 8)
        _, position = select_richest_patch(grid)
        self.assertEqual(position, (0, 0))

    def test_brute_force_agreement(self):
        """100 случайных сеток 4x4 совпадают с полным перебором"""
        rng = np.random.default_rng(5)
        for _ in range(100):
            grid = partition_patches(Image(rng.random((32, 32, 3))), 8)
            best, best_score = 0, -1.0
            for i, p in enumerate(grid.patches):
                score = brute_richness(p)
                if score > best_score:
                    best, best_score = i, score
            _, position = select_richest_patch(grid)
            self.assertEqual(position, grid.positions[best])

    def test_empty_grid(self):
        with self.assertRaises(ArgumentError):
            select_richest_patch(PatchGrid(patches=[], positions=[], patch=8))


if __name__ == '__main__':
    unittest.main()
