from src.core.logger import Logger


def test_records_carry_run_context(settings, capsys):
    logger = Logger(settings)
    logger.info("hidden below the configured level")
    logger.warning("mass correction 2.0e-07")

    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "entropic-edgeworth [grid=4096 seed=20110519] - WARNING - mass correction 2.0e-07" in err
