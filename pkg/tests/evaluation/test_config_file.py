"""
Тесты текстового файла конфигурации.
"""
import os
import tempfile
import unittest

from iapl.errors import ConfigError
from iapl.evaluation import ExperimentConfig, dump_config, load_config, parse_config, save_config
from iapl.evaluation.config_file import parse_bool

TEXT = """
# настольный прогон
encoder.depth = 4
encoder.adapter_span = 1,4,1
cil.channels = 8,8
train.lr = 0.01   # шаг
train.betas = 0.8,0.95
data.train.counts = real=5,fakeA=6
data.test.size = 48
ablation.tta = off
tta.loss_kind = pointwise
experiment.seed = 3
experiment.checkpoint = none
"""


class TestParseConfig(unittest.TestCase):
    """Тесты для parse_config"""

    def test_values(self):
        cfg = parse_config(TEXT)
        self.assertEqual(cfg.encoder.depth, 4)
        self.assertEqual(cfg.encoder.adapter_span, (1, 4, 1))
        self.assertEqual(cfg.cil.channels, (8, 8))
        self.assertEqual(cfg.train.lr, 0.01)
        self.assertEqual(cfg.train.betas, (0.8, 0.95))
        self.assertEqual(cfg.train_data.counts, {"real": 5, "fakeA": 6})
        self.assertEqual(cfg.test_data.size, 48)
        self.assertFalse(cfg.ablation.tta)
        self.assertEqual(cfg.tta.loss_kind, "pointwise")
        self.assertEqual(cfg.seed, 3)
        self.assertIsNone(cfg.checkpoint)

    def test_defaults_untouched(self):
        cfg = parse_config("encoder.dim = 32")
        self.assertEqual(cfg.encoder.heads, 4)
        self.assertEqual(cfg.tta.n_views, 32)

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            parse_config("encoder.width = 3")

    def test_unknown_section(self):
        with self.assertRaises(ConfigError):
            parse_config("model.depth = 3")

    def test_malformed_lines(self):
        with self.assertRaises(ConfigError):
            parse_config("encoder.depth 3")
        with self.assertRaises(ConfigError):
            parse_config("depth = 3")
        with self.assertRaises(ConfigError):
            parse_config("experiment.encoder = 3")

    def test_bad_values(self):
        with self.assertRaises(ConfigError):
            parse_config("encoder.depth = many")
        with self.assertRaises(ConfigError):
            parse_config("ablation.ovs = maybe")
        with self.assertRaises(ConfigError):
            parse_config("encoder.adapter_span = 1,2")

    def test_parse_bool(self):
        self.assertTrue(parse_bool(" ON "))
        self.assertFalse(parse_bool("no"))


class TestDumpConfig(unittest.TestCase):
    """Тесты для dump_config и save_config"""

    def test_dump_reads_back(self):
        cfg = parse_config(TEXT)
        self.assertEqual(parse_config(dump_config(cfg)), cfg)

    def test_dump_lines(self):
        text = dump_config(ExperimentConfig())
        self.assertIn("encoder.depth = 6\n", text)
        self.assertIn("data.test.counts = real=250,fakeB=250\n", text)
        self.assertIn("experiment.threads = none\n", text)

    def test_file(self):
        with tempfile.TemporaryDirectory() as root:
            path = save_config(parse_config("train.epochs = 1"), os.path.join(root, "run.cfg"))
            self.assertEqual(load_config(path).train.epochs, 1)


if __name__ == '__main__':
    unittest.main()
