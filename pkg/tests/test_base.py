"""
test_base: tests validators and exceptions shared by every module
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

"""
import numpy as np
import pytest

import rounddct


def test_matrixify() -> None:
    matrix = rounddct.base.matrixify(np.eye(8))
    assert matrix.dtype == float
    assert not matrix.flags.writeable
    with pytest.raises(rounddct.base.DimensionError):
        rounddct.base.matrixify(np.eye(7))
    with pytest.raises(rounddct.base.NonFiniteError):
        rounddct.base.matrixify(np.full((8, 8), np.inf))
    return

def test_vectorify() -> None:
    vector = rounddct.base.vectorify(range(8))
    assert list(vector) == list(range(8))
    with pytest.raises(rounddct.base.DimensionError, match = 'weights'):
        rounddct.base.vectorify([1, 2], name = 'weights')
    return

def test_errors() -> None:
    error = rounddct.base.FormatError('bad row', path = 'c.txt', line = 4)
    assert str(error) == 'c.txt:4: bad row'
    assert isinstance(error, ValueError)
    assert isinstance(error, rounddct.base.RoundDctError)
    assert str(rounddct.base.FormatError('bad')) == 'bad'
    assert issubclass(rounddct.base.KernelError, rounddct.base.RoundDctError)
    return

def test_lazy_imports() -> None:
    assert rounddct.TransformSpec is rounddct.transforms.TransformSpec
    with pytest.raises(AttributeError):
        rounddct.missing_attribute
    return


if __name__ == '__main__':
    pytest.main([__file__])
