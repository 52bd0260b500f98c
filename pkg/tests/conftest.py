from hypothesis import settings

settings.register_profile("fast", max_examples=25, deadline=None)
settings.load_profile("fast")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: replicated statistical checks, deselect with -m 'not slow'"
    )
