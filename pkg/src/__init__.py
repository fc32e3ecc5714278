# srcモジュールの初期化