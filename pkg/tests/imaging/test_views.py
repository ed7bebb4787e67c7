"""
Тесты интерполяции и генерации видов.
"""
import unittest

import numpy as np

from iapl.errors import ArgumentError
from iapl.imaging import CropBox, Image, ViewOrigin, generate_views, resize_bilinear


def random_image(h, w, seed=0):
    return Image(np.random.default_rng(seed).random((h, w, 3)))


class TestResizeBilinear(unittest.TestCase):
    """Тесты для resize_bilinear"""

    def test_constant(self):
        """Константа остается константой"""
        img = Image(np.full((5, 7, 3), 0.3))
        out = resize_bilinear(img, 11, 4)
        self.assertEqual(out.shape, (11, 4, 3))
        self.assertTrue(np.allclose(out.data, 0.3, atol=1e-15))

    def test_identity(self):
        """Тот же размер дает то же изображение"""
        img = random_image(6, 9)
        self.assertTrue(np.array_equal(resize_bilinear(img, 6, 9).data, img.data))

    def test_corner_aligned(self):
        """[0, 1] высотой 2 переходит в [0, 0.5, 1]"""
        data = np.zeros((2, 1, 3))
        data[1] = 1.0
        out = resize_bilinear(Image(data), 3, 1)
        self.assertTrue(np.allclose(out.data[:, 0, 0], [0.0, 0.5, 1.0], atol=1e-15))

    def test_bad_size(self):
        with self.assertRaises(ArgumentError):
            resize_bilinear(random_image(3, 3), 0, 3)


class TestGenerateViews(unittest.TestCase):
    """Тесты для generate_views"""

    def test_single_view(self):
        """n_views=1 дает только глобальный вид"""
        img = random_image(40, 30)
        views = generate_views(img, 1, 16, np.random.default_rng(0))
        self.assertEqual(len(views), 1)
        self.assertEqual(views.origins[0].kind, ViewOrigin.GLOBAL)
        self.assertTrue(np.array_equal(views.global_view.data, resize_bilinear(img, 16, 16).data))

    def test_crop_bounds(self):
        """Все фрагменты 224x224 лежат внутри изображения 512x512"""
        img = random_image(512, 512)
        views = generate_views(img, 32, 224, np.random.default_rng(1))
        self.assertEqual(len(views), 32)
        for view, origin in zip(views.views[1:], views.origins[1:]):
            self.assertEqual(origin.kind, ViewOrigin.CROP)
            self.assertLessEqual(origin.box.x + 224, 512)
            self.assertLessEqual(origin.box.y + 224, 512)
            self.assertTrue(origin.box.fits(512, 512))
            self.assertEqual(view.shape, (224, 224, 3))

    def test_crop_content(self):
        """Содержимое фрагмента совпадает с вырезкой (с учетом отражения)"""
        img = random_image(50, 60, seed=3)
        views = generate_views(img, 8, 20, np.random.default_rng(4))
        for view, origin in zip(views.views[1:], views.origins[1:]):
            box = origin.box
            expected = img.data[box.y:box.y + 20, box.x:box.x + 20]
            if box.flipped:
                expected = expected[:, ::-1]
            self.assertTrue(np.array_equal(view.data, expected))

    def test_small_image_fallback(self):
        """Изображение меньше вида: все локальные виды crop-resize"""
        img = random_image(100, 100)
        views = generate_views(img, 32, 224, np.random.default_rng(2))
        for view, origin in zip(views.views[1:], views.origins[1:]):
            self.assertEqual(origin.kind, ViewOrigin.CROP_RESIZE)
            self.assertGreaterEqual(origin.box.side, 50)
            self.assertLessEqual(origin.box.side, 100)
            self.assertTrue(origin.box.fits(100, 100))
            self.assertEqual(view.shape, (224, 224, 3))

    def test_determinism(self):
        """Одинаковое зерно дает побитово одинаковые виды"""
        img = random_image(70, 90)
        a = generate_views(img, 12, 32, np.random.default_rng(7))
        b = generate_views(img, 12, 32, np.random.default_rng(7))
        for va, vb in zip(a.views, b.views):
            self.assertTrue(np.array_equal(va.data, vb.data))
        self.assertEqual(a.origins, b.origins)

    def test_flip_rate(self):
        """Отражение примерно в половине видов"""
        img = random_image(64, 64)
        views = generate_views(img, 2001, 32, np.random.default_rng(5))
        flips = sum(o.box.flipped for o in views.origins[1:])
        self.assertGreater(flips, 850)
        self.assertLess(flips, 1150)

    def test_zero_views(self):
        with self.assertRaises(ArgumentError):
            generate_views(random_image(8, 8), 0, 4, np.random.default_rng(0))


class TestCropBox(unittest.TestCase):
    """Тесты для CropBox"""

    def test_fits(self):
        self.assertTrue(CropBox(0, 0, 10).fits(10, 10))
        self.assertFalse(CropBox(1, 0, 10).fits(10, 10))
        self.assertFalse(CropBox(-1, 0, 5).fits(10, 10))

    def test_center(self):
        self.assertEqual(CropBox(2, 4, 6).center, (5.0, 7.0))


if __name__ == '__main__':
    unittest.main()
