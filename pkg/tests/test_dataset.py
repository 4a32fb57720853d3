"""
Tests for score loading, feature selection and scaling
"""
import numpy as np
import pytest

from cluster_analyzer.core.exceptions import (
    ArgumentError,
    EmptyInputError,
    InputNotFoundError,
    ParseError,
    SchemaError,
)
from cluster_analyzer.data.dataset import (
    Dataset,
    FeatureView,
    Record,
    ScalingReport,
    load_csv,
    scale_features,
    select_features,
)
from cluster_analyzer.data.validation import DataValidator

from conftest import SCORE_COLUMNS


class TestLoadCsv:
    def test_sample_fragment(self, sample_dataset):
        assert sample_dataset.Q == 31
        assert sample_dataset.D == 3
        first = sample_dataset.records[0]
        assert first.index == 1
        assert first.scores == {'math score': 72.0, 'reading score': 72.0, 'writing score': 74.0}
        assert first.categorical == {'parental level of education': "bachelor's degree"}
        assert [r.index for r in sample_dataset.records] == list(range(1, 32))

    def test_round_trip_reproduces_file(self, sample_csv, sample_dataset, tmp_path):
        out = sample_dataset.to_csv(tmp_path / 'copy.csv')
        assert out.read_bytes() == sample_csv.read_bytes()
        again = load_csv(out, SCORE_COLUMNS)
        assert [r.scores for r in again.records] == [r.scores for r in sample_dataset.records]

    def test_header_only_is_empty(self, write_csv):
        path = write_csv([['math score', 'reading score']])
        with pytest.raises(EmptyInputError):
            load_csv(path, ['math score', 'reading score'])

    def test_zero_byte_file_is_empty(self, tmp_path):
        path = tmp_path / 'empty.csv'
        path.write_text('')
        with pytest.raises(EmptyInputError):
            load_csv(path, ['math score'])

    def test_unparseable_cell_names_row(self, write_csv):
        path = write_csv([
            ['math score', 'reading score'],
            ['72', '72'],
            ['abc', '90'],
        ])
        with pytest.raises(ParseError) as excinfo:
            load_csv(path, ['math score', 'reading score'])
        assert excinfo.value.row == 2
        assert excinfo.value.column == 'math score'
        assert 'Row 2' in str(excinfo.value)

    def test_missing_cell_is_rejected(self, write_csv):
        path = write_csv([['math score', 'reading score'], ['72', '72'], ['69', '']])
        with pytest.raises(ParseError) as excinfo:
            load_csv(path, ['math score', 'reading score'])
        assert excinfo.value.row == 2
        assert excinfo.value.column == 'reading score'

    def test_out_of_range_score(self, write_csv):
        path = write_csv([['math score'], ['101']])
        with pytest.raises(ParseError):
            load_csv(path, ['math score'])
        assert load_csv(path, ['math score'], score_range=None).records[0].scores['math score'] == 101.0

    def test_missing_column(self, write_csv):
        path = write_csv([['math score'], ['50']])
        with pytest.raises(SchemaError) as excinfo:
            load_csv(path, ['math score', 'reading score'])
        assert excinfo.value.column == 'reading score'
        assert 'reading score' in str(excinfo.value)

    def test_column_names_are_case_sensitive(self, write_csv):
        path = write_csv([['Math Score'], ['50']])
        with pytest.raises(SchemaError):
            load_csv(path, ['math score'])

    def test_quoted_fields(self, tmp_path):
        path = tmp_path / 'quoted.csv'
        path.write_text('"level","math score"\n"some, college","65"\n', encoding='utf-8')
        d = load_csv(path, ['math score'])
        assert d.records[0].categorical == {'level': 'some, college'}
        assert d.records[0].scores == {'math score': 65.0}

    def test_missing_file(self, tmp_path):
        path = tmp_path / 'nope.csv'
        with pytest.raises(InputNotFoundError) as excinfo:
            load_csv(path, ['math score'])
        assert str(path) in str(excinfo.value)


class TestDataset:
    def test_duplicate_indices_rejected(self):
        r = Record(1, {'a': 1.0})
        with pytest.raises(ArgumentError):
            Dataset((r, r), ('a',))

    def test_no_records_rejected(self):
        with pytest.raises(EmptyInputError):
            Dataset((), ('a',))

    def test_mismatched_fields_rejected(self):
        with pytest.raises(SchemaError):
            Dataset((Record(1, {'a': 1.0}), Record(2, {'b': 1.0})), ('a',))

    def test_column_lookup(self, sample_dataset):
        math = sample_dataset.column('math score')
        assert math.shape == (31,)
        assert math[11] == 40.0
        with pytest.raises(SchemaError):
            sample_dataset.column('parental level of education')
        with pytest.raises(SchemaError):
            sample_dataset.column('science score')


class TestSelectFeatures:
    def test_math_and_reading(self, sample_dataset):
        v = select_features(sample_dataset, 'math score', 'reading score')
        assert v.x[11] == 40.0
        assert v.y[11] == 52.0
        assert v.scaling.applied is False
        assert v.scaling.factor == 1.0

    def test_reading_and_writing(self, sample_dataset):
        v = select_features(sample_dataset, 'reading score', 'writing score')
        assert (v.x[0], v.y[0]) == (72.0, 74.0)

    def test_identical_columns(self, sample_dataset):
        with pytest.raises(ArgumentError):
            select_features(sample_dataset, 'math score', 'math score')

    def test_unknown_column(self, sample_dataset):
        with pytest.raises(SchemaError):
            select_features(sample_dataset, 'math score', 'science score')

    def test_view_is_read_only(self, sample_dataset):
        v = select_features(sample_dataset, 'math score', 'reading score')
        with pytest.raises(ValueError):
            v.x[0] = 0.0


class TestScaleFeatures:
    def test_equal_ranges_untouched(self):
        v = FeatureView.from_points([(0, 0), (100, 100), (50, 20)])
        scaled = scale_features(v)
        assert scaled is v
        assert scaled.scaling.applied is False
        assert scaled.scaling.factor == 1.0

    def test_small_axis_is_stretched(self):
        v = FeatureView.from_points([(0, 0), (1000, 10), (500, 5)])
        scaled = scale_features(v)
        assert scaled.scaling.applied is True
        assert scaled.scaling.scaled_axis == 'y'
        assert scaled.scaling.factor == pytest.approx(100.0)
        assert scaled.scaling.original_ranges == (1000.0, 10.0)
        assert np.ptp(scaled.y) == pytest.approx(np.ptp(scaled.x))
        np.testing.assert_array_equal(scaled.x, v.x)

    def test_x_axis_can_be_scaled(self):
        v = FeatureView.from_points([(0, 0), (2, 500), (1, 100)])
        scaled = scale_features(v)
        assert scaled.scaling.scaled_axis == 'x'
        assert scaled.scaling.factor == pytest.approx(250.0)

    def test_ratio_of_ten_is_within_limit(self):
        v = FeatureView.from_points([(0, 0), (100, 10)])
        assert scale_features(v).scaling.applied is False

    def test_single_record(self):
        v = FeatureView.from_points([(40, 52)])
        scaled = scale_features(v)
        assert scaled.scaling.applied is False
        assert scaled.scaling.factor == 1.0

    def test_constant_axis_is_not_scaled(self):
        v = FeatureView.from_points([(5, 0), (5, 50), (5, 20)])
        scaled = scale_features(v)
        assert scaled.scaling.applied is False
        np.testing.assert_array_equal(scaled.x, v.x)

    def test_idempotent(self):
        v = FeatureView.from_points([(0, 0), (1000, 3), (200, 7)])
        once = scale_features(v)
        twice = scale_features(once)
        assert twice is once
        np.testing.assert_array_equal(twice.y, once.y)

    def test_preserves_order_within_axis(self):
        v = FeatureView.from_points([(0, 3), (1000, 1), (200, 7), (10, 2)])
        scaled = scale_features(v)
        np.testing.assert_array_equal(np.argsort(scaled.y, kind='stable'), np.argsort(v.y, kind='stable'))

    def test_report_maps_between_units(self):
        report = ScalingReport(applied=True, scaled_axis='y', factor=100.0, original_ranges=(1000.0, 10.0))
        assert report.to_feature_space(3.0, 0.5) == (3.0, 50.0)
        assert report.to_original_units(3.0, 50.0) == (3.0, 0.5)


class TestDataValidator:
    def test_constant_column_warning(self):
        import pandas as pd
        frame = pd.DataFrame({'a': ['5', '5', '5'], 'b': ['1', '2', '3']})
        result = DataValidator().validate_scores(frame, ['a', 'b'])
        assert result.is_valid
        assert [i.field for i in result.warnings] == ['a']

    def test_issues_sorted_by_row(self):
        import pandas as pd
        frame = pd.DataFrame({'a': ['1', 'x', '3'], 'b': ['y', '2', '']})
        result = DataValidator().validate_scores(frame, ['a', 'b'])
        assert not result.is_valid
        assert [(i.row, i.field) for i in result.critical] == [(1, 'b'), (2, 'a'), (3, 'b')]
