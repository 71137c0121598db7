import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclemap.errors import (
    BadMagic,
    CountMismatch,
    InsufficientClassMembers,
    NonGrayscaleImage,
    TruncatedFile,
    UnparsableName,
)
from cyclemap.ingest import (
    LabeledRaster,
    load_idx,
    load_image_dir,
    sample_per_class,
    to_filtration_function,
    write_idx,
)


def make_rasters(labels, w=4, h=4, start=0):
    rng = np.random.default_rng(123)
    return [
        LabeledRaster(
            id=f"idx-{start + i}", label=lbl, width=w, height=h,
            pixels=rng.integers(0, 256, size=w * h, dtype=np.uint8),
        )
        for i, lbl in enumerate(labels)
    ]


class TestIdx:
    def test_round_trip(self, tmp_path):
        rasters = make_rasters([3, 1, 4, 1, 5])
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        write_idx(rasters, imgs, lbls)
        loaded = load_idx(imgs, lbls)
        assert len(loaded) == 5
        for orig, got in zip(rasters, loaded):
            assert got.id == orig.id
            assert got.label == orig.label
            assert (got.width, got.height) == (4, 4)
            assert np.array_equal(got.pixels, orig.pixels)

    def test_header_fields_parsed_big_endian(self, tmp_path):
        # 2 items of 3x2 (rows=2, cols=3), bytes spelled out by hand
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        imgs.write_bytes(struct.pack(">IIII", 0x803, 2, 2, 3) + bytes(range(12)))
        lbls.write_bytes(struct.pack(">II", 0x801, 2) + bytes([7, 9]))
        loaded = load_idx(imgs, lbls)
        assert [r.label for r in loaded] == [7, 9]
        assert loaded[0].width == 3 and loaded[0].height == 2
        assert loaded[1].pixels.tolist() == list(range(6, 12))

    def test_bad_magic(self, tmp_path):
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        imgs.write_bytes(struct.pack(">IIII", 0xDEAD, 0, 2, 2))
        lbls.write_bytes(struct.pack(">II", 0x801, 0))
        with pytest.raises(BadMagic) as exc:
            load_idx(imgs, lbls)
        assert str(imgs) in str(exc.value) and "offset 0" in str(exc.value)

    def test_count_mismatch(self, tmp_path):
        rasters = make_rasters([0] * 5, w=2, h=2)
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        write_idx(rasters, imgs, lbls)
        lbls.write_bytes(struct.pack(">II", 0x801, 6) + bytes(6))
        with pytest.raises(CountMismatch) as exc:
            load_idx(imgs, lbls)
        assert "5" in str(exc.value) and "6" in str(exc.value)

    def test_truncated_pixels(self, tmp_path):
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        imgs.write_bytes(struct.pack(">IIII", 0x803, 2, 2, 2) + bytes(5))
        lbls.write_bytes(struct.pack(">II", 0x801, 2) + bytes(2))
        with pytest.raises(TruncatedFile):
            load_idx(imgs, lbls)

    def test_empty_file(self, tmp_path):
        imgs, lbls = tmp_path / "imgs", tmp_path / "lbls"
        imgs.write_bytes(b"")
        lbls.write_bytes(b"")
        with pytest.raises(TruncatedFile) as exc:
            load_idx(imgs, lbls)
        assert str(imgs) in str(exc.value)


class TestImageDir:
    def test_loads_named_grayscale(self, tmp_path):
        from PIL import Image

        for name in ("8_0.png", "8_1.png"):
            Image.fromarray(np.full((5, 5), 99, dtype=np.uint8), "L").save(tmp_path / name)
        rasters = load_image_dir(tmp_path)
        assert [r.label for r in rasters] == [8, 8]
        assert [r.id for r in rasters] == ["8_0", "8_1"]
        assert all(np.all(r.pixels == 99) for r in rasters)

    def test_pgm(self, tmp_path):
        from PIL import Image

        Image.fromarray(np.arange(16, dtype=np.uint8).reshape(4, 4), "L").save(
            tmp_path / "3_0.pgm"
        )
        (r,) = load_image_dir(tmp_path)
        assert r.label == 3
        assert r.pixels.tolist() == list(range(16))

    def test_unparsable_name(self, tmp_path):
        from PIL import Image

        Image.fromarray(np.zeros((4, 4), dtype=np.uint8), "L").save(tmp_path / "cat.png")
        with pytest.raises(UnparsableName):
            load_image_dir(tmp_path)

    def test_non_grayscale(self, tmp_path):
        from PIL import Image

        Image.new("RGB", (4, 4)).save(tmp_path / "1_0.png")
        with pytest.raises(NonGrayscaleImage):
            load_image_dir(tmp_path)

    def test_empty_dir(self, tmp_path):
        assert load_image_dir(tmp_path) == []

    def test_sorted_by_filename(self, tmp_path):
        from PIL import Image

        for name in ("2_1.png", "1_0.png", "2_0.png"):
            Image.fromarray(np.zeros((4, 4), dtype=np.uint8), "L").save(tmp_path / name)
        assert [r.id for r in load_image_dir(tmp_path)] == ["1_0", "2_0", "2_1"]


class TestSamplePerClass:
    def test_identity_when_exact(self):
        items = make_rasters([0, 1, 0, 1, 0, 1])
        assert sample_per_class(items, 3, seed=9) == items

    def test_exact_counts_and_order(self):
        items = make_rasters([0, 1] * 50)
        out = sample_per_class(items, 10, seed=1)
        labels = [r.label for r in out]
        assert labels.count(0) == 10 and labels.count(1) == 10
        # original relative order: positions within the input are increasing
        pos = [items.index(r) for r in out]
        assert pos == sorted(pos)

    def test_deterministic(self):
        items = make_rasters([0, 1, 2] * 40)
        a = sample_per_class(items, 5, seed=42)
        b = sample_per_class(items, 5, seed=42)
        assert a == b
        c = sample_per_class(items, 5, seed=43)
        assert c != a  # overwhelmingly likely

    def test_insufficient(self):
        items = make_rasters([3] * 50)
        with pytest.raises(InsufficientClassMembers) as exc:
            sample_per_class(items, 100, seed=0)
        assert exc.value.label == 3
        assert exc.value.available == 50
        assert exc.value.requested == 100

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            sample_per_class(make_rasters([0]), 0, seed=0)


class TestFiltrationFunction:
    def test_formula_examples(self):
        r = LabeledRaster(id="x", label=0, width=2, height=2,
                          pixels=np.array([255, 0, 51, 128], dtype=np.uint8))
        inv = to_filtration_function(r, invert=True)
        raw = to_filtration_function(r, invert=False)
        assert inv.values[0] == 0.0
        assert raw.values[1] == 0.0
        assert inv.values[2] == pytest.approx(0.8, abs=1e-15)
        assert raw.values[0] == 1.0

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(0, 255), min_size=4, max_size=4))
    def test_round_trip_and_range(self, pixel_list):
        r = LabeledRaster(id="x", label=0, width=2, height=2,
                          pixels=np.array(pixel_list, dtype=np.uint8))
        for invert in (False, True):
            g = to_filtration_function(r, invert=invert)
            assert g.values.min() >= 0.0 and g.values.max() <= 1.0
        raw = to_filtration_function(r, invert=False)
        assert np.array_equal(np.round(raw.values * 255).astype(np.uint8), r.pixels)
