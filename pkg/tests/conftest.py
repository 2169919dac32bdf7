import pytest

from empathica import (
    anti_coordination_game,
    coordination_game,
    matching_pennies,
    prisoners_dilemma,
)


@pytest.fixture
def pd():
    return prisoners_dilemma()


@pytest.fixture
def mp():
    return matching_pennies()


@pytest.fixture
def coord():
    return coordination_game()


@pytest.fixture
def anti():
    return anti_coordination_game()
