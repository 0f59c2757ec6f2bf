default_app_config = "fracdim2d.apps.Fracdim2dConfig"
__version__ = "0.3"
