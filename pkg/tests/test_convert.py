"""
test_convert: tests type converters for settings and command-line values
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

"""
import pathlib

import pytest

import rounddct


def test_listify() -> None:
    assert rounddct.convert.listify(None) == []
    assert rounddct.convert.listify(None, default = 'none') == 'none'
    assert rounddct.convert.listify('proposed') == ['proposed']
    assert rounddct.convert.listify(('a', 'b')) == ['a', 'b']
    items = ['dct']
    assert rounddct.convert.listify(items) is items
    return

def test_numify() -> None:
    assert rounddct.convert.numify('45') == 45
    assert rounddct.convert.numify('0.5') == 0.5
    assert rounddct.convert.numify('sdct') == 'sdct'
    with pytest.raises(TypeError):
        rounddct.convert.numify('sdct', raise_error = True)
    return

def test_typify() -> None:
    assert rounddct.convert.typify('proposed,sdct') == ['proposed', 'sdct']
    assert rounddct.convert.typify(' 12 ') == 12
    assert rounddct.convert.typify('1e-9') == 1e-9
    assert rounddct.convert.typify('True') is True
    assert rounddct.convert.typify('no') is False
    assert rounddct.convert.typify(' Off ') is False
    assert rounddct.convert.typify('all') == 'all'
    assert rounddct.convert.typify(7) == 7
    return

def test_pathlibify() -> None:
    assert rounddct.convert.pathlibify('out') == pathlib.Path('out')
    path = pathlib.Path('corpus')
    assert rounddct.convert.pathlibify(path) is path
    with pytest.raises(TypeError):
        rounddct.convert.pathlibify(3)
    return


if __name__ == '__main__':
    pytest.main([__file__])
