import pytest

from brauerrel import SubgroupClassTable, parse_group_spec


@pytest.fixture(scope="session")
def table_cache():
    cache = {}

    def get(spec: str) -> SubgroupClassTable:
        if spec not in cache:
            cache[spec] = SubgroupClassTable(parse_group_spec(spec))
        return cache[spec]

    return get
