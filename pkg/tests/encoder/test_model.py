"""
Тесты кодировщика: расписание адаптеров, вложение патчей, прямой проход.
"""
import unittest

import numpy as np
import torch
from scipy.special import erf

from iapl.encoder import (GATE_INIT, EncoderConfig, PromptedViT, adapter_schedule, create_desk_config,
                          create_full_scale_config, patchify)
from iapl.errors import ArgumentError, ConfigError


def build(cfg, seed=0, dtype=torch.float32):
    model = PromptedViT(cfg)
    model.reset_parameters(torch.Generator().manual_seed(seed))
    return model.to(dtype).eval()


class TestAdapterSchedule(unittest.TestCase):
    """Тесты для adapter_schedule"""

    def test_even_intervals(self):
        self.assertEqual(adapter_schedule(24, 6), (4, 8, 12, 16, 20, 24))

    def test_saturation(self):
        self.assertEqual(adapter_schedule(6, 6), (1, 2, 3, 4, 5, 6))

    def test_two_of_eight(self):
        self.assertEqual(adapter_schedule(8, 2), (4, 8))

    def test_desk_default(self):
        self.assertEqual(adapter_schedule(6, 3), (2, 4, 6))

    def test_span(self):
        self.assertEqual(adapter_schedule(24, 6, span=(1, 6, 1)), (1, 2, 3, 4, 5, 6))
        self.assertEqual(adapter_schedule(24, 6, span=(18, 24, 1)), tuple(range(18, 25)))
        self.assertEqual(adapter_schedule(24, 6, span=(3, 24, 3)), (3, 6, 9, 12, 15, 18, 21, 24))

    def test_too_many(self):
        with self.assertRaises(ArgumentError):
            adapter_schedule(4, 5)
        with self.assertRaises(ArgumentError):
            adapter_schedule(4, 2, span=(2, 5, 1))

    def test_model_uses_schedule(self):
        model = PromptedViT(create_desk_config())
        equipped = tuple(j for j, b in enumerate(model.blocks, start=1) if b.has_adapter)
        self.assertEqual(equipped, (2, 4, 6))


class TestEncoderConfig(unittest.TestCase):
    """Тесты для EncoderConfig"""

    def test_presets_valid(self):
        create_desk_config()
        cfg = create_full_scale_config()
        self.assertEqual(adapter_schedule(cfg.depth, cfg.n_adapters, cfg.adapter_span), (4, 8, 12, 16, 20, 24))

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            EncoderConfig(dim=30, heads=4).validate()
        with self.assertRaises(ConfigError):
            EncoderConfig(adapter_dim=64).validate()
        with self.assertRaises(ConfigError):
            EncoderConfig(last_token_block=1).validate()
        with self.assertRaises(ConfigError):
            EncoderConfig(view_size=60).validate()
        with self.assertRaises(ConfigError):
            EncoderConfig(n_tokens=3).validate()


class TestPatchEmbed(unittest.TestCase):
    """Тесты для patch_embed"""

    def test_token_count(self):
        model = build(create_desk_config())
        seq = model.patch_embed(torch.rand(2, 3, 64, 64))
        self.assertEqual(tuple(seq.image_tokens.shape), (2, 64, 64))
        self.assertEqual(tuple(seq.cls.shape), (2, 1, 64))
        self.assertEqual(seq.n_prompts, 0)

    def test_zero_image_gives_positions(self):
        model = build(create_desk_config())
        with torch.no_grad():
            model.embed.bias.zero_()
        seq = model.patch_embed(torch.zeros(1, 3, 64, 64))
        self.assertTrue(torch.equal(seq.image_tokens[0], model.pos))

    def test_single_patch_oracle(self):
        """Вид из одного патча: токен равен W x + b + pos"""
        cfg = EncoderConfig(depth=2, dim=8, heads=2, patch=4, view_size=4, adapter_dim=2,
                            n_adapters=1, last_token_block=2)
        model = build(cfg, dtype=torch.float64)
        pixels = torch.rand(1, 3, 4, 4, dtype=torch.float64)
        flat = pixels[0].reshape(-1)
        expected = model.embed.weight @ flat + model.embed.bias + model.pos[0]
        seq = model.patch_embed(pixels)
        self.assertTrue(torch.allclose(seq.image_tokens[0, 0], expected, atol=1e-14))

    def test_patch_order(self):
        """Патчи идут построчно, внутри патча - канал, строка, столбец"""
        pixels = torch.arange(3 * 4 * 4, dtype=torch.float64).reshape(1, 3, 4, 4)
        patches = patchify(pixels, 2)
        self.assertEqual(tuple(patches.shape), (1, 4, 12))
        self.assertTrue(torch.equal(patches[0, 1], pixels[0, :, 0:2, 2:4].reshape(-1)))

    def test_wrong_size(self):
        model = build(create_desk_config())
        with self.assertRaises(ArgumentError):
            model.patch_embed(torch.zeros(1, 3, 32, 32))


class TestEncoderForward(unittest.TestCase):
    """Тесты для прямого прохода PromptedViT"""

    def setUp(self):
        self.cfg = create_desk_config()
        self.model = build(self.cfg)
        self.pixels = torch.rand(2, 3, 64, 64, generator=torch.Generator().manual_seed(0))
        self.prompt = torch.rand(2, 64, generator=torch.Generator().manual_seed(1))

    def test_zero_logit_at_init(self):
        out = self.model(self.pixels, self.prompt)
        self.assertTrue(torch.equal(out.logits, torch.zeros(2)))
        self.assertEqual(tuple(out.features.shape), (2, 64))

    def test_sequence_lengths(self):
        """M=2, depth=6, N_t=4: N+3 в блоках 1..4 и N+1 в блоках 5..6"""
        trace = []
        self.model(self.pixels, self.prompt, trace=trace)
        self.assertEqual(trace, [67, 67, 67, 67, 65, 65])

    def test_sequence_lengths_without_prompt(self):
        trace = []
        self.model(self.pixels, None, trace=trace)
        self.assertEqual(trace, [65, 67, 67, 67, 65, 65])

    def test_init_values(self):
        for gate in self.model.gates.values():
            self.assertEqual((gate - GATE_INIT).abs().max().item(), 0.0)
        self.assertTrue(torch.equal(self.model.head.weight, torch.zeros_like(self.model.head.weight)))
        for block in self.model.blocks:
            if block.has_adapter:
                self.assertTrue(torch.equal(block.adapter.up, torch.zeros_like(block.adapter.up)))

    def test_same_seed_same_params(self):
        other = build(self.cfg)
        for (name, a), (_, b) in zip(self.model.named_parameters(), other.named_parameters()):
            self.assertTrue(torch.equal(a, b), name)

    def test_zero_adapter_identity(self):
        """Адаптеры с W_up = 0 не меняют ни одного выхода"""
        plain = PromptedViT(EncoderConfig(use_adapters=False)).eval()
        missing, unexpected = plain.load_state_dict(self.model.state_dict(), strict=False)
        self.assertEqual(missing, [])
        self.assertTrue(all(".adapter." in name for name in unexpected))
        a = self.model(self.pixels, self.prompt)
        b = plain(self.pixels, self.prompt)
        self.assertTrue(torch.equal(a.features, b.features))

    def test_deterministic(self):
        with torch.no_grad():
            self.model.head.weight.fill_(0.1)
        a = self.model(self.pixels, self.prompt).logits
        b = self.model(self.pixels, self.prompt).logits
        self.assertTrue(torch.equal(a, b))

    def test_bad_prompt(self):
        with self.assertRaises(ArgumentError):
            self.model(self.pixels, torch.zeros(2, 32))

    def test_backbone_split(self):
        self.assertTrue(self.model.is_backbone("blocks.0.attn.qkv.weight"))
        self.assertTrue(self.model.is_backbone("pos"))
        self.assertFalse(self.model.is_backbone("blocks.1.adapter.down"))
        self.assertFalse(self.model.is_backbone("tokens.2"))
        self.assertFalse(self.model.is_backbone("head.weight"))


def layer_norm(x, w, b, eps=1e-5):
    mean = x.mean(-1, keepdims=True)
    var = x.var(-1, keepdims=True)
    return (x - mean) / np.sqrt(var + eps) * w + b


def gelu(x):
    return 0.5 * x * (1.0 + erf(x / np.sqrt(2.0)))


class TestSingleBlockOracle(unittest.TestCase):
    """Один блок, одна голова, D=4: пошаговое вычисление в numpy"""

    def test_matches_hand_evaluation(self):
        cfg = EncoderConfig(depth=1, dim=4, heads=1, patch=2, view_size=2, adapter_dim=2,
                            n_adapters=1, use_tokens=False, dropout_p=0.0)
        model = build(cfg, dtype=torch.float64)
        g = torch.Generator().manual_seed(5)
        with torch.no_grad():
            for p in model.parameters():
                p.copy_(torch.rand(p.shape, generator=g, dtype=torch.float64) - 0.5)
        pixels = torch.rand(1, 3, 2, 2, generator=g, dtype=torch.float64)
        prompt = torch.rand(2, 4, generator=g, dtype=torch.float64)
        P = {k: v.detach().numpy() for k, v in model.named_parameters()}

        img_token = P["embed.weight"] @ pixels[0].numpy().reshape(-1) + P["embed.bias"] + P["pos"][0]
        x = np.vstack([prompt.numpy(), P["cls"], img_token[None, :]])

        h = layer_norm(x, P["blocks.0.norm1.weight"], P["blocks.0.norm1.bias"])
        qkv = h @ P["blocks.0.attn.qkv.weight"].T + P["blocks.0.attn.qkv.bias"]
        q, k, v = qkv[:, :4], qkv[:, 4:8], qkv[:, 8:]
        scores = q @ k.T / 2.0
        scores = np.exp(scores - scores.max(axis=1, keepdims=True))
        attn = scores / scores.sum(axis=1, keepdims=True)
        x = x + (attn @ v) @ P["blocks.0.attn.proj.weight"].T + P["blocks.0.attn.proj.bias"]

        h = layer_norm(x, P["blocks.0.norm2.weight"], P["blocks.0.norm2.bias"])
        hidden = gelu(h @ P["blocks.0.mlp.fc1.weight"].T + P["blocks.0.mlp.fc1.bias"])
        mlp = hidden @ P["blocks.0.mlp.fc2.weight"].T + P["blocks.0.mlp.fc2.bias"]
        adapter = 0.1 * np.maximum(h @ P["blocks.0.adapter.down"], 0.0) @ P["blocks.0.adapter.up"]
        x = x + mlp + adapter

        feature = layer_norm(x[2], P["norm.weight"], P["norm.bias"])
        logit = P["head.weight"][0] @ feature + P["head.bias"][0]

        out = model(pixels, prompt)
        self.assertAlmostEqual(out.logits[0].item(), logit, places=12)
        self.assertTrue(np.allclose(out.features[0].detach().numpy(), feature, atol=1e-12))


if __name__ == '__main__':
    unittest.main()
