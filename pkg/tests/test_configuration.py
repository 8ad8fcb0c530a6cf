"""
test_configuration: tests settings files and run configurations
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

"""
import json
import pathlib

import pytest

import rounddct


def test_settings_from_dictionary() -> None:
    settings = rounddct.configuration.Settings.from_dictionary(
        {'general': {'r_max': '10', 'transforms': 'proposed, sdct',
                     'verbose': 'yes'}},
        default = {'general': {'panels': 64}, 'bench': {'workers': 2}})
    assert settings['general']['r_max'] == 10
    assert settings['general']['transforms'] == ['proposed', 'sdct']
    assert settings['general']['verbose'] is True
    assert settings['general']['panels'] == 64
    assert settings['bench'] == {'workers': 2}
    settings['spectral'] = {'panels': 32}
    assert len(settings) == 3
    with pytest.raises(TypeError):
        settings['broken'] = 5
    return

def test_settings_files(tmp_path) -> None:
    ini = tmp_path / 'settings.ini'
    ini.write_text('[general]\nr_min = 2\nr_max = 9\n')
    as_json = tmp_path / 'settings.json'
    as_json.write_text(json.dumps({'general': {'r_min': 2, 'r_max': 9}}))
    as_toml = tmp_path / 'settings.toml'
    as_toml.write_text('[general]\nr_min = 2\nr_max = 9\n')
    for path in (ini, as_json, as_toml):
        settings = rounddct.configuration.Settings.from_path(path)
        assert settings['general'] == {'r_min': 2, 'r_max': 9}
    with pytest.raises(rounddct.base.DomainError):
        rounddct.configuration.Settings.from_path(tmp_path / 'settings.yaml')
    with pytest.raises(rounddct.base.DomainError):
        rounddct.configuration.Settings.from_path(tmp_path / 'settings.path')
    for name in ('missing.ini', 'missing.json', 'missing.toml'):
        with pytest.raises(FileNotFoundError):
            rounddct.configuration.Settings.from_path(tmp_path / name)
    return

def test_settings_inject() -> None:
    settings = rounddct.configuration.Settings.from_dictionary({
        'general': {'r_max': 20, 'panels': 64, 'workers': 2},
        'bench': {'workers': 4, 'r_max': 30},
        'extra': {'r_min': 3, 'workers': 9}})
    config = rounddct.configuration.RunConfig(subcommand = 'bench', panels = 8)
    settings.inject(config, additional = 'extra')
    assert config.r_max == 30
    assert config.workers == 4
    assert config.r_min == 3
    assert config.panels == 8
    spectral = rounddct.configuration.RunConfig(subcommand = 'spectral')
    settings.inject(spectral)
    assert (spectral.r_max, spectral.workers) == (20, 2)
    settings.inject(config, overwrite = True)
    assert config.panels == 64
    assert config.r_max == 30
    return

def test_command_section_beats_general(tmp_path) -> None:
    path = tmp_path / 'settings.ini'
    path.write_text('[general]\nr_max = 45\nr_min = 2\n\n[bench]\nr_max = 10\n')
    settings = rounddct.configuration.Settings.from_path(path)
    config = settings.inject(
        rounddct.configuration.RunConfig(subcommand = 'bench')).complete()
    assert config.r_range == range(2, 11)
    flagged = settings.inject(
        rounddct.configuration.RunConfig(subcommand = 'bench', r_max = 5))
    assert flagged.r_max == 5
    return

def test_malformed_settings_files(tmp_path) -> None:
    broken = {
        'settings.toml': '[general]\nr_max = abc\n',
        'settings.json': '{"general": {"r_max": }',
        'settings.ini': 'r_max = 10\n',
        'flat.toml': 'r_max = 10\n',
        'flat.json': '[1, 2]'}
    for name, text in broken.items():
        path = tmp_path / name
        path.write_text(text)
        with pytest.raises(rounddct.base.FormatError, match = name):
            rounddct.configuration.Settings.from_path(path)
    return

def test_run_config_rejects_non_numbers() -> None:
    for value in ('abc', [1, 2], True, 2.5, float('inf')):
        config = rounddct.configuration.RunConfig(
            subcommand = 'bench', r_max = value) # type: ignore
        with pytest.raises(rounddct.base.DomainError, match = 'r_max'):
            config.complete()
    assert rounddct.configuration.RunConfig(
        subcommand = 'bench', r_max = 9.0).complete().r_max == 9 # type: ignore
    return

def test_run_config_complete() -> None:
    config = rounddct.configuration.RunConfig(
        subcommand = 'bench', r_max = 5, corpus = 'images',
        comparators = ['extra.txt']).complete()
    assert config.transforms == ['default']
    assert config.r_range == range(1, 6)
    assert config.corpus == pathlib.Path('images')
    assert config.out == pathlib.Path('output')
    assert config.comparators == [pathlib.Path('extra.txt')]
    assert (config.panels, config.workers) == (1024, 1)
    assert config.name == 'bench'
    return

def test_run_config_validate() -> None:
    registry = rounddct.registry.Registry.create()
    config = rounddct.configuration.RunConfig(subcommand = 'bench').complete()
    config.validate(registry)
    for field, value in (
            ('r_min', 0), ('r_max', 65), ('panels', 7), ('workers', 0),
            ('transforms', ['missing'])):
        broken = rounddct.configuration.RunConfig(
            subcommand = 'bench').complete()
        setattr(broken, field, value)
        with pytest.raises(rounddct.base.DomainError):
            broken.validate(registry)
    reversed_range = rounddct.configuration.RunConfig(
        subcommand = 'bench', r_min = 10, r_max = 3).complete()
    with pytest.raises(rounddct.base.DomainError):
        reversed_range.validate()
    return


if __name__ == '__main__':
    pytest.main([__file__])
