import io

import numpy as np
import pytest

from dirichlet_ds.errors import InputFormatError
from dirichlet_ds.formats import (
    format_float,
    parse_int_list,
    parse_points,
    read_config_file,
    write_bench,
    write_polytopes,
    write_records,
    write_table,
)
from dirichlet_ds.models.common_models import Method
from dirichlet_ds.models.simulation_models import PValueRecord
from dirichlet_ds.models.table_models import ContingencyTable


def test_parse_int_list():
    assert parse_int_list("3,5,2") == [3, 5, 2]
    assert parse_int_list(" 0 , 4 ") == [0, 4]
    for text in ("3,,2", "3,a", "", "1.5,2"):
        with pytest.raises(InputFormatError):
            parse_int_list(text)


def test_parse_points_with_comments():
    lines = ["# header", "0.1,0.9", "", "0.6, 0.2  # trailing", "  "]
    assert parse_points(lines).tolist() == [[0.1, 0.9], [0.6, 0.2]]


def test_parse_points_empty():
    assert parse_points(["# nothing here"]).shape == (0, 2)


@pytest.mark.parametrize("line", ["0.1", "0.1,0.2,0.3", "x,0.2"])
def test_parse_points_rejects_malformed_lines(line):
    with pytest.raises(InputFormatError, match="line 1"):
        parse_points([line])


def test_floats_round_trip():
    value = 1 / 3
    assert float(format_float(value)) == value
    assert format_float(0.1) == "0.10000000000000001"


def test_write_records():
    handle = io.StringIO()
    write_records(
        handle,
        [PValueRecord(dataset_index=0, method=Method.DS, k=2, p_upper=0.5, p_lower=0.25)],
    )
    assert handle.getvalue() == "dataset,method,k,p_upper,p_lower\n0,ds,2,0.5,0.25\n"


def test_write_bench():
    handle = io.StringIO()
    write_bench(handle, [(2, 10, 0.25), (3, 10, 0.5)])
    assert handle.getvalue() == "method,k,d,m,seconds\nds,2,4,10,0.25\nds,3,9,10,0.5\n"


def test_write_table():
    handle = io.StringIO()
    write_table(handle, ContingencyTable(k=2, cells=[0, 1, 1, 0]))
    assert handle.getvalue() == "col_1,col_2\n0,1\n1,0\n"


def test_write_polytopes_includes_vertices():
    handle = io.StringIO()
    write_polytopes(handle, np.array([[0.5, 0.2, 0.3]]))
    header, row = handle.getvalue().splitlines()
    assert header == "draw,w0,w_1,w_2,v1_1,v1_2,v2_1,v2_2"
    values = [float(value) for value in row.split(",")[1:]]
    assert values == pytest.approx([0.5, 0.2, 0.3, 0.7, 0.3, 0.2, 0.8])


def test_read_config_file(tmp_path):
    path = tmp_path / "study.conf"
    path.write_text("n=20\ndatasets=5\nresolutions=2,3\nmaster-seed=7\n", encoding="utf-8")
    assert read_config_file(path) == {
        "n": "20",
        "datasets": "5",
        "resolutions": "2,3",
        "seed": "7",
    }


def test_read_config_file_rejects_unknown_keys(tmp_path):
    path = tmp_path / "study.conf"
    path.write_text("burn_in=300\n", encoding="utf-8")
    with pytest.raises(InputFormatError, match="burn_in"):
        read_config_file(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(InputFormatError):
        read_config_file(tmp_path / "absent.conf")
